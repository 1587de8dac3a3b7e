#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crn/network.hpp"
#include "crn/exact_linalg.hpp"
#include "crn/polysystem.hpp"
#include "crn/random_networks.hpp"
#include "support.hpp"

using namespace crn;
using crn::testing::matrix;

TEST_CASE("path example matrices match the displayed forms") {
  const NetworkMatrices m = build_matrices(testing::example1());
  CHECK(m.source_complex_matrix == matrix({{0, 2, 3, 1}, {0, 1, 0, 1}}));
  CHECK(m.gamma == matrix({{1, 1, -1, 1}, {1, -1, 0, 0}}));
  CHECK(m.stoichiometric == m.complex_matrix * m.incidence);
  CHECK(m.laplacian == m.incidence * testing::example1().rates.asDiagonal() *
                           m.source_incidence.transpose());
}

TEST_CASE("two-singleton example gamma at unit rates") {
  const NetworkMatrices m = build_matrices(testing::example3());
  CHECK(m.source_complex_matrix == matrix({{1, 2, 3}, {0, 0, 1}}));
  CHECK(m.gamma == matrix({{0, 0, 1}, {1, 1, -1}}));
}

TEST_CASE("reversible pair has N equal to gamma at unit rates") {
  const NetworkMatrices m = build_matrices(testing::reversible_pair());
  CHECK(m.stoichiometric == matrix({{-1, 1}, {1, -1}}));
  CHECK(m.gamma == m.stoichiometric);
}

TEST_CASE("structural counts of the three worked examples") {
  const StructuralReport r1 = structural_report(testing::example1());
  CHECK(r1.deficiency == 2);
  CHECK(r1.dependency == 1);

  const StructuralReport r2 = structural_report(testing::example2());
  CHECK(r2.deficiency == 2);
  CHECK(r2.dependency == 1);
  CHECK(r2.stats.component_count == 1);
  CHECK(r2.stats.terminal_count == 2);
  CHECK(r2.stats.nonsingleton_terminal_count == 1);

  const StructuralReport r3 = structural_report(testing::example3());
  CHECK(r3.deficiency == 2);
  // the figure caption value d = |V_s| - 1 - dim L = 3 - 1 - 2 = 0; the body
  // text of the third example misquotes it (see the regression fixtures)
  CHECK(r3.dependency == 0);

  const StructuralReport pair = structural_report(testing::reversible_pair());
  CHECK(pair.deficiency == 0);
  CHECK(pair.dependency == 0);
  CHECK(pair.kinetic_equals_stoich);
  CHECK(pair.diff_equals_stoich);
}

TEST_CASE("vector field of the path example at the unit state") {
  const Eigen::VectorXd f =
      evaluate_vector_field(testing::example1(), Eigen::Vector2d(1, 1));
  CHECK(f[0] == doctest::Approx(2).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("symmetric pair state is an equilibrium") {
  for (double c : {0.5, 1.0, 3.0}) {
    const Eigen::VectorXd f =
        evaluate_vector_field(testing::reversible_pair(), Eigen::Vector2d(c, c));
    CHECK(std::abs(f[0]) < 1e-14);
    CHECK(std::abs(f[1]) < 1e-14);
  }
}

TEST_CASE("vector field rejects non-positive states") {
  CHECK_THROWS_AS(evaluate_vector_field(testing::example1(), Eigen::Vector2d(1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_vector_field(testing::example1(), Eigen::Vector2d(-1, 1)),
                  std::invalid_argument);
}

TEST_CASE("repeated complexes are flagged but analysis still works") {
  MassActionSystem sys =
      testing::make_system(1, matrix({{1, 2, 1}}), {{0, 1}, {1, 2}}, {1, 1});
  const auto warnings = validate(sys.network);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("same complex") != std::string::npos);
  const StructuralReport report = structural_report(sys);
  CHECK(report.deficiency >= 0);
}

TEST_CASE("invalid systems are rejected") {
  MassActionSystem sys = testing::reversible_pair();
  sys.rates[0] = 0;
  CHECK_THROWS_AS(validate(sys), std::invalid_argument);
  sys = testing::reversible_pair();
  sys.rates = VectorXq::Constant(1, 1);
  CHECK_THROWS_AS(validate(sys), std::invalid_argument);
}

TEST_CASE("random systems satisfy the structural inclusions and identities") {
  Rng rng(202);
  int weakly_reversible_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const MassActionSystem sys = rng.chance(0.5)
                                     ? random_system(rng, 4, 6)
                                     : random_weakly_reversible_system(rng, 4, 6);
    const StructuralReport report = structural_report(sys);

    CHECK(report.deficiency >= 0);
    CHECK(report.dependency >= 0);
    CHECK(image_contained(report.kinetic_basis, report.stoich_basis));

    if (report.stats.terminal_count == report.stats.component_count) {
      CHECK(report.kinetic_equals_stoich);
      if (report.stats.weakly_reversible) ++weakly_reversible_seen;
    }

    // d through the polynomial-system machinery agrees exactly
    PolySystem ps;
    ps.coefficients = report.matrices.gamma;
    ps.exponents = report.matrices.source_complex_matrix;
    ps.class_sizes = {static_cast<Index>(report.matrices.sources.size())};
    ps.scale = VectorXq::Constant(ps.coefficients.cols(), 1);
    CHECK(monomial_structure(ps).dependency == report.dependency);
  }
  CHECK(weakly_reversible_seen > 10);
}
