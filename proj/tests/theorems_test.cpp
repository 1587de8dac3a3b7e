#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crn/theorems.hpp"
#include "crn/random_networks.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>

using namespace crn;
using crn::testing::matrix;
using crn::testing::vector;

namespace {

PolySystem one_class(MatrixXq a, MatrixXq b) {
  PolySystem sys;
  sys.coefficients = std::move(a);
  sys.exponents = std::move(b);
  sys.class_sizes = {sys.coefficients.cols()};
  sys.scale = VectorXq::Constant(sys.coefficients.cols(), 1);
  return sys;
}

ClassAnalysis analyze_network_class(const MassActionSystem& sys) {
  const Decomposition dec = finest_independent_decomposition(sys);
  REQUIRE(dec.class_count() == 1);
  const PolySystem ps = polysystem_from_decomposition(dec);
  const MonomialStructure ms = monomial_structure(ps);
  return analyze_class(ps, ms, 0);
}

// a verdict-input analysis with a prescribed lumped vector, for the
// condition-logic examples stated directly on b-tilde
ClassAnalysis from_lumped(std::initializer_list<Rational> values) {
  ClassAnalysis out;
  out.applicable = true;
  out.dependency = 1;
  out.polytope_dim = 1;
  out.b_lumped = vector(values);
  const LumpedConditionFlags flags = lumped_condition_flags(out.b_lumped);
  out.partial_sums_nonneg = flags.partial_sums_nonneg;
  out.partial_sums_nonpos = flags.partial_sums_nonpos;
  out.endpoints_mixed = flags.endpoints_mixed;
  return out;
}

ConditionStatus status_of(const TheoremVerdict& verdict, const std::string& label) {
  for (const auto& condition : verdict.conditions)
    if (condition.label == label) return condition.status;
  FAIL("no condition labeled " << label);
  return ConditionStatus::not_applicable;
}

}  // namespace

TEST_CASE("path example class analysis matches the worked values") {
  const ClassAnalysis ca = analyze_network_class(testing::example1());
  REQUIRE(ca.applicable);
  CHECK(ca.dependency == 1);
  CHECK(ca.polytope_dim == 1);
  CHECK(ca.q_sorted == vector({1, 1, 0, -1}));
  CHECK(ca.b == vector({1, 3, -1, -3}));
  CHECK(ca.b_lumped == vector({4, -1, -3}));
  CHECK(ca.partial_sums_nonneg);  // prefix sums 4, 3
  CHECK(ca.endpoints_mixed);      // 4 * (-3) < 0
}

TEST_CASE("intro example class analysis matches the worked values") {
  const ClassAnalysis ca = analyze_network_class(testing::example2());
  REQUIRE(ca.applicable);
  CHECK(ca.b_lumped == vector({3, -2, -1}));  // prefix sums 3, 1; 3 * (-1) < 0
  CHECK(ca.b == vector({1, 2, -2, -1}));
  CHECK(ca.partial_sums_nonneg);
  CHECK(ca.endpoints_mixed);
}

TEST_CASE("dependency-zero class is vacuously fine") {
  const ClassAnalysis ca = analyze_network_class(testing::example3(1, 1, 3, 1, 1));
  REQUIRE(ca.applicable);
  CHECK(ca.dependency == 0);
  CHECK(ca.polytope_dim == 0);
  CHECK(ca.b_lumped.size() == 0);
  CHECK(ca.partial_sums_nonneg);
  CHECK(ca.partial_sums_nonpos);
  CHECK(ca.endpoints_mixed);
}

TEST_CASE("empty class cone is reported as not applicable") {
  const ClassAnalysis ca = analyze_network_class(testing::example3());  // k32 = 1
  CHECK_FALSE(ca.applicable);
  CHECK(ca.not_applicable_reason == "no positive kernel point");
}

TEST_CASE("one-class theorem verdict on the worked and synthetic vectors") {
  CHECK(check_one_class(analyze_network_class(testing::example1())).passed);
  CHECK(check_one_class(analyze_network_class(testing::example1())).conclusion ==
        "|Y_c| = 1 for all c");

  CHECK_FALSE(check_one_class(from_lumped({1, -3, 2})).passed);  // sums 1, -2 mixed
  CHECK(check_one_class(from_lumped({2, -2})).passed);           // sums (2); -4 < 0
}

TEST_CASE("existence dichotomy and its failure cases") {
  CHECK(check_existence(from_lumped({4, -1, -3})).passed);
  CHECK(check_existence(from_lumped({4, -1, -3})).conclusion == "exists for all c");

  const TheoremVerdict zero_neg = check_existence(from_lumped({0, 1, -1}));
  CHECK_FALSE(zero_neg.passed);
  CHECK(zero_neg.conditions[0].witness.find("b_tilde_1 = 0 and b_tilde_omega < 0") !=
        std::string::npos);
  CHECK(zero_neg.conditions[0].witness.find("bounded below") != std::string::npos);

  const TheoremVerdict neg_neg = check_existence(from_lumped({-1, 2, -1}));
  CHECK_FALSE(neg_neg.passed);
  CHECK(neg_neg.conditions[0].witness.find("b_tilde_1 < 0 and b_tilde_omega < 0") !=
        std::string::npos);

  const TheoremVerdict pos_pos = check_existence(from_lumped({1, -4, 3}));
  CHECK_FALSE(pos_pos.passed);
  CHECK(pos_pos.conditions[0].witness.find("bounded above") != std::string::npos);
}

TEST_CASE("mass-action theorem on the path example") {
  const MassActionSystem sys = testing::example1();
  const TheoremVerdict verdict =
      check_mass_action(sys, finest_independent_decomposition(sys));
  CHECK(verdict.passed);
  CHECK(status_of(verdict, "(I) ker Gamma_k meets the positive orthant") == ConditionStatus::pass);
  CHECK(status_of(verdict, "(IIa) K = L") == ConditionStatus::pass);
  CHECK(status_of(verdict, "(IIb) L = S") == ConditionStatus::pass);
  CHECK(status_of(verdict, "(III) class 1") == ConditionStatus::pass);
  CHECK(verdict.conclusion.find("unique positive equilibrium per stoichiometric class") !=
        std::string::npos);
}

TEST_CASE("mass-action theorem under the intro example's rate condition") {
  // 3 k12 - k15 > 0 at k15 = 1 (passes), fails at k15 = 4
  const MassActionSystem good = testing::example2();
  const TheoremVerdict pass = check_mass_action(good, finest_independent_decomposition(good));
  CHECK(pass.passed);

  const MassActionSystem bad = testing::example2(4);
  const TheoremVerdict fail = check_mass_action(bad, finest_independent_decomposition(bad));
  CHECK_FALSE(fail.passed);
  CHECK(fail.any_failed());
  CHECK(status_of(fail, "(I) ker Gamma_k meets the positive orthant") == ConditionStatus::fail);
}

TEST_CASE("mass-action theorem under the two-singleton example's rate condition") {
  // k32 - 2 k34 > 0 at k32 = 3 (passes, d = 0), fails at k32 = 1
  const MassActionSystem good = testing::example3(1, 1, 3, 1, 1);
  const TheoremVerdict pass = check_mass_action(good, finest_independent_decomposition(good));
  CHECK(pass.passed);
  CHECK(status_of(pass, "(III) class 1") == ConditionStatus::pass);

  const MassActionSystem bad = testing::example3();
  const TheoremVerdict fail = check_mass_action(bad, finest_independent_decomposition(bad));
  CHECK_FALSE(fail.passed);
  CHECK(status_of(fail, "(I) ker Gamma_k meets the positive orthant") == ConditionStatus::fail);
}

TEST_CASE("deficiency one theorem on the reversible pair and both failures") {
  const MassActionSystem pair = testing::reversible_pair();
  const TheoremVerdict pass = check_deficiency_one(pair, finest_independent_decomposition(pair));
  CHECK(pass.passed);
  CHECK(pass.conclusion ==
        "unique positive equilibrium per stoichiometric class for all rate constants");

  const MassActionSystem path = testing::example1();
  const TheoremVerdict fail1 = check_deficiency_one(path, finest_independent_decomposition(path));
  CHECK_FALSE(fail1.passed);
  CHECK(status_of(fail1, "(i) class 1: delta_j <= 1") == ConditionStatus::fail);
  CHECK(status_of(fail1, "(ii) class 1: t_j = 1") == ConditionStatus::pass);

  const MassActionSystem intro = testing::example2();
  const TheoremVerdict fail2 = check_deficiency_one(intro, finest_independent_decomposition(intro));
  CHECK_FALSE(fail2.passed);
  CHECK(status_of(fail2, "(i) class 1: delta_j <= 1") == ConditionStatus::fail);
  CHECK(status_of(fail2, "(ii) class 1: t_j = 1") == ConditionStatus::fail);
}

TEST_CASE("decomposable-systems theorem composes class verdicts") {
  // block rows make ker A = ker A_1 x ker A_2 by construction
  MatrixXq a = MatrixXq::Zero(3, 6);
  a.block(0, 0, 2, 4) << 1, 1, -1, 1, 1, -1, 0, 0;  // the path example's gamma
  a(2, 4) = 1;
  a(2, 5) = -1;  // plus a reversible pair block on its own species
  MatrixXq b = MatrixXq::Zero(3, 6);
  b.block(0, 0, 2, 4) << 0, 2, 3, 1, 0, 1, 0, 1;
  b(2, 4) = 1;
  PolySystem sys;
  sys.coefficients = a;
  sys.exponents = b;
  sys.class_sizes = {4, 2};
  sys.scale = VectorXq::Constant(6, 1);
  const MonomialStructure ms = monomial_structure(sys);
  const TheoremVerdict verdict = check_decomposable(sys, ms);
  CHECK(verdict.passed);
  CHECK(verdict.conclusion == "|Y_c| = 1 for all c");
}

TEST_CASE("verdicts are invariant under column permutations") {
  Rng rng(606);
  const PolySystem base =
      one_class(matrix({{1, 1, -1, 1}, {1, -1, 0, 0}}), matrix({{0, 2, 3, 1}, {0, 1, 0, 1}}));
  const ClassAnalysis reference = analyze_class(base, monomial_structure(base), 0);

  std::vector<Index> perm{0, 1, 2, 3};
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng.engine);
    PolySystem shuffled = base;
    for (Index c = 0; c < 4; ++c) {
      shuffled.coefficients.col(c) = base.coefficients.col(perm[c]);
      shuffled.exponents.col(c) = base.exponents.col(perm[c]);
    }
    const ClassAnalysis ca = analyze_class(shuffled, monomial_structure(shuffled), 0);
    CHECK(ca.q_sorted == reference.q_sorted);
    CHECK(ca.b_lumped == reference.b_lumped);
    CHECK(check_one_class(ca).passed == check_one_class(reference).passed);
    CHECK(check_existence(ca).passed == check_existence(reference).passed);
  }
}

TEST_CASE("monotonicity witness: f' = f h stays positive on a grid") {
  for (const MassActionSystem& sys : {testing::example1(), testing::example2()}) {
    const ClassAnalysis ca = analyze_network_class(sys);
    REQUIRE(ca.partial_sums_nonneg);
    const Eigen::VectorXd q = to_double(ca.q_distinct);
    const Eigen::VectorXd b = to_double(ca.b_lumped);
    for (int i = 0; i < 1000; ++i) {
      const double t = -1 + 1e-6 + (2 - 2e-6) * i / 999.0;
      double h = 0;
      for (Index j = 0; j < q.size(); ++j) h += b[j] * q[j] / (1 + t * q[j]);
      CHECK(h > 0);
    }
  }
}

TEST_CASE("deficiency-one internal lemma assertions hold on random connected networks") {
  Rng rng(707);
  int exercised = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const MassActionSystem sys = random_weakly_reversible_system(rng, 3, 5);
    const Decomposition dec = finest_independent_decomposition(sys);
    if (!dec.connected_ok) continue;
    // throws if K_j = L_j = S_j or d_j = delta_j + t'_j - 1 fails under t_j = 1
    CHECK_NOTHROW(check_deficiency_one(sys, dec));
    for (const auto& sub : dec.subnetworks) exercised += sub.stats.terminal_count == 1;
  }
  CHECK(exercised > 10);
}

TEST_CASE("not-applicable propagates for disconnected decompositions") {
  const MassActionSystem sys = testing::two_reversible_pairs();
  const Decomposition whole = decomposition_from_partition(sys, {{0, 1, 2, 3}});
  REQUIRE_FALSE(whole.connected_ok);
  const TheoremVerdict verdict = check_mass_action(sys, whole);
  CHECK_FALSE(verdict.passed);
  CHECK_FALSE(verdict.any_failed());
  CHECK(verdict.any_not_applicable());
  CHECK(verdict.conclusion == "no conclusion");
}
