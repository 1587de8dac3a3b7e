#pragma once

#include "crn/polysystem.hpp"

#include <string>
#include <vector>

namespace crn {

/// Per-class data behind the dependency-one conditions: polytope vertices,
/// the ratio vector q, its equal-value lumps, and the lumped dependency
/// vector b-tilde.
struct ClassAnalysis {
  Index class_index = 0;
  bool applicable = false;
  std::string not_applicable_reason;

  Index polytope_dim = -1;  // dim P_j
  Index dependency = 0;     // d_j

  VectorXq vertex_hi;  // y1 (simplex-normalized), present when dim P_j = 1
  VectorXq vertex_lo;  // y2
  VectorXq q;          // (y1 - y2) o (y1 + y2)^-1, original class order
  VectorXq q_sorted;   // descending; first entry 1, last entry -1
  std::vector<Index> permutation;                // sorted position -> class-local index
  std::vector<std::vector<Index>> lump_classes;  // I_1 .. I_omega (class-local indices)
  VectorXq q_distinct;                           // q-tilde

  VectorXq b;         // im b = ker Bcal_j; primitive integer, sign-normalized
  VectorXq b_lumped;  // b-tilde, in sorted lump order

  bool partial_sums_nonneg = false;  // prefix sums of b-tilde >= 0 for i < omega
  bool partial_sums_nonpos = false;
  bool endpoints_mixed = false;  // b-tilde_1 * b-tilde_omega < 0
};

/// Prefix-sum and endpoint-sign conditions of a lumped dependency vector.
struct LumpedConditionFlags {
  bool partial_sums_nonneg = false;
  bool partial_sums_nonpos = false;
  bool endpoints_mixed = false;
};

LumpedConditionFlags lumped_condition_flags(const VectorXq& b_lumped);

ClassAnalysis analyze_class(const PolySystem& sys, const MonomialStructure& ms, Index class_index);

std::vector<ClassAnalysis> analyze_all_classes(const PolySystem& sys, const MonomialStructure& ms);

enum class ConditionStatus { pass, fail, not_applicable };

std::string to_string(ConditionStatus status);

struct TheoremCondition {
  std::string label;
  ConditionStatus status = ConditionStatus::not_applicable;
  std::string witness;
  bool diagnostic = false;  // informational, does not gate the conclusion
};

struct TheoremVerdict {
  std::string theorem;
  std::vector<TheoremCondition> conditions;
  std::string conclusion = "no conclusion";
  bool passed = false;

  bool any_failed() const;
  bool any_not_applicable() const;
};

/// Theorem (d = 1, one class): uniform-sign partial sums plus mixed-sign
/// endpoints give |Y_c| = 1 for all c.
TheoremVerdict check_one_class(const ClassAnalysis& analysis);

/// Existence dichotomy: |Y_c| >= 1 for all c iff b-tilde_1 * b-tilde_omega < 0.
/// On failure the verdict names the boundedness case of f.
TheoremVerdict check_existence(const ClassAnalysis& analysis);

/// Sign classification of the failure cases of the existence dichotomy.
/// bounded_above: sup f < infinity, so large targets are unreachable;
/// otherwise inf f > 0 and small targets are unreachable.
struct ExistenceFailureCase {
  std::string description;
  bool bounded_above = false;
};
ExistenceFailureCase existence_failure_case(int sign_first, int sign_last);

/// Theorem (d <= 1, decomposable systems) for a polynomial system with classes.
TheoremVerdict check_decomposable(const PolySystem& sys, const MonomialStructure& ms);

/// Theorem (d <= 1, mass-action systems): conditions (I), (IIa)/(IIb), (III).
TheoremVerdict check_mass_action(const MassActionSystem& sys, const Decomposition& dec);

/// Theorem (deficiency one, independent subnetworks).
TheoremVerdict check_deficiency_one(const MassActionSystem& sys, const Decomposition& dec);

}  // namespace crn
