#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crn/polysystem.hpp"
#include "crn/random_networks.hpp"
#include "support.hpp"

#include <cmath>

using namespace crn;
using crn::testing::matrix;

namespace {

PolySystem one_class(MatrixXq a, MatrixXq b) {
  PolySystem sys;
  sys.coefficients = std::move(a);
  sys.exponents = std::move(b);
  sys.class_sizes = {sys.coefficients.cols()};
  sys.scale = VectorXq::Constant(sys.coefficients.cols(), 1);
  return sys;
}

PolySystem path_example_system() {
  return one_class(matrix({{1, 1, -1, 1}, {1, -1, 0, 0}}), matrix({{0, 2, 3, 1}, {0, 1, 0, 1}}));
}

bool spans_line(const KernelBasis& basis, const VectorXq& direction) {
  if (basis.dimension() != 1) return false;
  MatrixXq joined(direction.size(), 2);
  joined << basis.vectors.col(0), direction;
  return rank(joined) == 1;
}

}  // namespace

TEST_CASE("monomial structure of the path example") {
  const PolySystem sys = path_example_system();
  const MonomialStructure ms = monomial_structure(sys);
  CHECK(ms.diff_basis.cols() == 2);  // dim L = 2
  CHECK(ms.dependency == 1);
  CHECK(spans_line(ms.dependency_basis, testing::vector({1, 3, -1, -3})));
  CHECK(ms.difference == matrix({{-1, 1, 2}, {-1, 0, -1}}));
  // E = I M* reproduces M M* M = M bookkeeping
  CHECK(ms.difference * g_inverse(ms.difference) * ms.difference == ms.difference);
}

TEST_CASE("monomial structure of the intro example") {
  const PolySystem sys =
      one_class(matrix({{-1, -1, 3, -3}, {1, -1, -1, 1}}), matrix({{1, 1, 0, 3}, {0, 1, 1, 0}}));
  const MonomialStructure ms = monomial_structure(sys);
  CHECK(ms.dependency == 1);
  CHECK(spans_line(ms.dependency_basis, testing::vector({1, 2, -2, -1})));
}

TEST_CASE("identity exponents give a zero dependency subspace") {
  const PolySystem sys = one_class(matrix({{1, 1}}), MatrixXq::Identity(2, 2));
  const MonomialStructure ms = monomial_structure(sys);
  CHECK(ms.diff_basis.cols() == 1);
  CHECK(ms.dependency == 0);
  CHECK(ms.dependency_basis.dimension() == 0);
}

TEST_CASE("class product structure is enforced") {
  PolySystem sys = one_class(matrix({{1, -1, 0, 0}, {0, 0, 1, -1}}), MatrixXq::Identity(4, 4));
  sys.class_sizes = {2, 2};
  CHECK_NOTHROW(validate(sys));  // ker A really is a product over these blocks

  PolySystem bad = one_class(matrix({{1, 0, -1, 0}, {0, 1, 0, -1}}), MatrixXq::Identity(4, 4));
  bad.class_sizes = {2, 2};
  CHECK_THROWS_WITH_AS(validate(bad), "system not class-decomposed", std::invalid_argument);
}

TEST_CASE("polytope segment of the path example at unit rates") {
  const PolytopeSegment segment = coefficient_polytope_segment(path_example_system(), 0);
  REQUIRE(segment.dim == 1);
  REQUIRE(segment.vertices.size() == 2);
  // (1,1,2,0)/4 and (0,0,1,1)/2 in either order
  const VectorXq a = testing::vector({Rational(1, 4), Rational(1, 4), Rational(1, 2), 0});
  const VectorXq b = testing::vector({0, 0, Rational(1, 2), Rational(1, 2)});
  const bool forward = segment.vertices[0] == a && segment.vertices[1] == b;
  const bool backward = segment.vertices[0] == b && segment.vertices[1] == a;
  CHECK((forward || backward));
}

TEST_CASE("polytope of the two-singleton example is a point when k32 > 2 k34") {
  // gamma at k32 = 3, all other rates 1
  const PolySystem sys = one_class(matrix({{0, -2, 1}, {1, 1, -1}}), matrix({{1, 2, 3}, {0, 0, 1}}));
  const PolytopeSegment segment = coefficient_polytope_segment(sys, 0);
  REQUIRE(segment.dim == 0);
  CHECK(segment.vertices[0] ==
        testing::vector({Rational(1, 4), Rational(1, 4), Rational(1, 2)}));
}

TEST_CASE("polytope segment rejects an empty coefficient cone") {
  // gamma of the intro example at k15 = 4: no positive kernel point
  const PolySystem sys =
      one_class(matrix({{-4, -1, 3, -3}, {1, -1, -1, 1}}), matrix({{1, 1, 0, 3}, {0, 1, 1, 0}}));
  CHECK_THROWS_WITH_AS(coefficient_polytope_segment(sys, 0), "no positive kernel point",
                       std::domain_error);
}

TEST_CASE("full plane kernel has the unit vectors as vertices") {
  const PolySystem sys = one_class(MatrixXq::Zero(1, 2), matrix({{1, 0}, {0, 1}}));
  const PolytopeSegment segment = coefficient_polytope_segment(sys, 0);
  REQUIRE(segment.dim == 1);
  CHECK(segment.vertices[0] + segment.vertices[1] == testing::vector({1, 1}));
}

TEST_CASE("fiber reconstruction solves the two-singleton example exactly") {
  const PolySystem sys = one_class(matrix({{0, -2, 1}, {1, 1, -1}}), matrix({{1, 2, 3}, {0, 0, 1}}));
  const MonomialStructure ms = monomial_structure(sys);
  Eigen::VectorXd y(3);
  y << 0.25, 0.25, 0.5;
  const FiberSolution fiber = fiber_from_polytope_point(ms, sys, y);
  CHECK(fiber.x_star[0] == doctest::Approx(1).epsilon(1e-12));
  CHECK(fiber.x_star[1] == doctest::Approx(2).epsilon(1e-12));
  CHECK(fiber.residual <= 1e-10);
  CHECK(fiber.lperp_basis.cols() == 0);
}

TEST_CASE("fiber reconstruction rejects points violating the binomial condition") {
  const PolySystem sys = path_example_system();
  const MonomialStructure ms = monomial_structure(sys);
  Eigen::VectorXd mid(4);
  mid << 0.125, 0.125, 0.5, 0.25;  // segment midpoint: in P, binomial fails
  CHECK_THROWS_WITH_AS(fiber_from_polytope_point(ms, sys, mid), "y not in Y_c",
                       std::domain_error);
  Eigen::VectorXd off(4);
  off << 0.25, 0.25, 0.25, 0.25;  // in the simplex but not in ker A
  CHECK_THROWS_WITH_AS(fiber_from_polytope_point(ms, sys, off), "y not in P", std::domain_error);
}

TEST_CASE("path example fiber point from the univariate oracle") {
  // oracle: bisection on (1+t)^4/(1-t)^3 = 32 run directly on the formula
  double lo = 0, hi = 1 - 1e-9;
  auto f = [](double t) { return std::pow(1 + t, 4) / std::pow(1 - t, 3); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 32 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  CHECK(t == doctest::Approx(0.4725).epsilon(2e-4));

  const PolySystem sys = path_example_system();
  const MonomialStructure ms = monomial_structure(sys);
  Eigen::VectorXd y(4);
  y << (1 + t) / 8, (1 + t) / 8, 0.5, (1 - t) / 4;
  const FiberSolution fiber = fiber_from_polytope_point(ms, sys, y);
  CHECK(fiber.residual <= 1e-10);
  CHECK(fiber.lperp_basis.cols() == 0);
  for (Index i = 0; i < 2; ++i) CHECK(fiber.x_star[i] > 0);
}

TEST_CASE("fiber shifts along L-perp still solve the system") {
  Rng rng(404);
  int verified = 0;
  for (int attempt = 0; attempt < 300 && verified < 25; ++attempt) {
    // random one-class system with a guaranteed interior polytope point
    const Index m = rng.uniform(3, 5);
    VectorXq interior(m);
    for (Index i = 0; i < m; ++i) interior[i] = rng.positive_rational(5, 3);
    MatrixXq point(m, 1);
    point.col(0) = interior;
    const MatrixXq a = orthogonal_complement(point).transpose();

    const Index n = rng.uniform(2, 4);
    MatrixXq b(n, m);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < m; ++c) b(r, c) = rng.uniform(0, 2);

    PolySystem sys = one_class(a, b);
    const MonomialStructure ms = monomial_structure(sys);
    if (ms.dependency != 0) continue;
    if (ms.diff_basis.cols() >= n) continue;  // want a nontrivial fiber

    const PolytopeSegment segment = coefficient_polytope_segment(sys, 0);
    if (segment.dim != 0) continue;
    const FiberSolution fiber = fiber_from_polytope_point(ms, sys, to_double(segment.vertices[0]));
    REQUIRE(fiber.lperp_basis.cols() > 0);

    const Eigen::MatrixXd shifts = to_double(fiber.lperp_basis);
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
      for (Index c = 0; c < shifts.cols(); ++c)
        w += rng.uniform_real(-2.0, 2.0) * shifts.col(c);
      const Eigen::VectorXd x = fiber.x_star.array() * w.array().exp();
      CHECK(residual_vector(sys, x).cwiseAbs().maxCoeff() <= 1e-8);
    }
    ++verified;
  }
  CHECK(verified == 25);
}

TEST_CASE("dependency agrees between the difference matrix and the Cayley stack on random systems") {
  Rng rng(505);
  for (int trial = 0; trial < 60; ++trial) {
    const Index m = rng.uniform(2, 6), n = rng.uniform(1, 4);
    MatrixXq a(rng.uniform(1, 3), m), b(n, m);
    for (Index r = 0; r < a.rows(); ++r)
      for (Index c = 0; c < m; ++c) a(r, c) = rng.uniform(-2, 2);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < m; ++c) b(r, c) = rng.uniform(0, 3);
    const PolySystem sys = one_class(std::move(a), std::move(b));
    // monomial_structure asserts the two computations of d agree
    const MonomialStructure ms = monomial_structure(sys);
    CHECK(ms.dependency >= 0);
    CHECK(ms.dependency == ms.dependency_basis.dimension());
  }
}
