#pragma once

#include "crn/equilibrium.hpp"
#include "crn/salt.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace crn {

struct SuiteResult {
  std::string name;
  int cases = 0;
  bool passed = true;
  std::string detail;
};

/// Random networks (n <= 4, |V| <= 6): d computed via M and via the stacked
/// Cayley matrix agree; delta, d >= 0; K <= S; t = l implies K = S;
/// dim ker R_k = t'; dim im R_k = |V| - t.
SuiteResult dependency_identity_suite(uint64_t seed, int cases);

/// Random two-block networks with disjoint species: the finest decomposition
/// refines the blocks, and d, delta, vertex-count, and kernel identities hold.
SuiteResult decomposition_suite(uint64_t seed, int cases);

/// Random one-component digraphs (|V| <= 8): all salt-certificate claims hold
/// for every non-singleton terminal strong component.
SuiteResult salt_suite(uint64_t seed, int cases);

/// Random single-class d = 1 systems (m <= 5): when the one-class theorem
/// passes, grid root counting finds exactly one root of f(t) = c* for random
/// c; when existence fails, a c with zero roots is exhibited from the
/// boundedness case.
SuiteResult univariate_brute_force_suite(uint64_t seed, int cases);

/// Random Birch instances (n <= 6): Newton converges within 50 iterations,
/// both memberships hold to 1e-8, and the result is invariant under shifts of
/// the anchor inside its coset.
SuiteResult birch_suite(uint64_t seed, int cases);

/// Structural identities and theorem-internal assertions on one given system.
SuiteResult network_invariants_suite(const MassActionSystem& sys);

std::vector<SuiteResult> run_property_suites(uint64_t seed, int cases);

/// Number of roots of f(t) = c* on (-1, 1) by dense grid sign counting.
int count_univariate_roots(const Eigen::VectorXd& q_distinct, const Eigen::VectorXd& b_lumped,
                           double log_target);

}  // namespace crn
