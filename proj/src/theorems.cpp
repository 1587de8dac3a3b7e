#include "crn/theorems.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace crn {

namespace {

int sign_of(const Rational& value) { return value > 0 ? 1 : value < 0 ? -1 : 0; }

std::string join_sums(const VectorXq& b_lumped) {
  std::ostringstream out;
  Rational sum = 0;
  out << "prefix sums (";
  for (Index i = 0; i + 1 < b_lumped.size(); ++i) {
    sum += b_lumped[i];
    if (i) out << ", ";
    out << to_string(sum);
  }
  out << ")";
  return out.str();
}

}  // namespace

ClassAnalysis analyze_class(const PolySystem& sys, const MonomialStructure& ms, Index class_index) {
  ClassAnalysis out;
  out.class_index = class_index;
  out.dependency = class_dependency(sys, class_index);

  PolytopeSegment segment;
  try {
    segment = coefficient_polytope_segment(sys, class_index);
  } catch (const std::domain_error& e) {
    out.not_applicable_reason = e.what();
    return out;
  }
  out.polytope_dim = segment.dim;

  if (out.dependency >= 2) {
    out.not_applicable_reason = "monomial dependency of class exceeds one";
    return out;
  }
  if (segment.dim >= 2) {
    out.not_applicable_reason = "coefficient polytope dimension exceeds one";
    return out;
  }

  if (out.dependency == 0) {
    out.applicable = true;
    out.partial_sums_nonneg = true;
    out.partial_sums_nonpos = true;
    out.endpoints_mixed = true;  // vacuous: no binomial condition
    return out;
  }

  if (segment.dim != 1) {
    out.not_applicable_reason = "dependency one but coefficient polytope is a point";
    return out;
  }

  const Index m = segment.vertices[0].size();

  // dependency vector of the class: ker (B_j over the all-ones row)
  const std::vector<Index> offsets = sys.class_offsets();
  MatrixXq stacked(sys.exponents.rows() + 1, m);
  stacked << sys.exponents.middleCols(offsets[class_index], m), MatrixXq::Constant(1, m, 1);
  const KernelBasis dep = kernel_basis(stacked);
  if (dep.dimension() != 1)
    throw std::logic_error("analyze_class: class dependency subspace not one-dimensional");
  const VectorXq b_raw = primitive_integer(dep.vectors.col(0));

  // one candidate per labeling of the two segment vertices
  struct Orientation {
    VectorXq vertex_hi, vertex_lo, q, q_sorted, q_distinct, b, b_lumped;
    std::vector<Index> permutation;
    std::vector<std::vector<Index>> lump_classes;
  };
  auto build = [&](const VectorXq& hi, const VectorXq& lo) {
    Orientation o;
    o.vertex_hi = hi;
    o.vertex_lo = lo;
    o.q.resize(m);
    for (Index i = 0; i < m; ++i) o.q[i] = (hi[i] - lo[i]) / (hi[i] + lo[i]);
    o.permutation.resize(m);
    std::iota(o.permutation.begin(), o.permutation.end(), 0);
    std::stable_sort(o.permutation.begin(), o.permutation.end(),
                     [&](Index a, Index b) { return o.q[a] > o.q[b]; });
    o.q_sorted.resize(m);
    for (Index i = 0; i < m; ++i) o.q_sorted[i] = o.q[o.permutation[i]];
    if (o.q_sorted[0] != 1 || o.q_sorted[m - 1] != -1)
      throw std::logic_error("analyze_class: sorted q does not span [1, -1]");
    for (Index i = 0; i < m; ++i) {
      if (i == 0 || o.q_sorted[i] != o.q_sorted[i - 1]) o.lump_classes.push_back({});
      o.lump_classes.back().push_back(o.permutation[i]);
    }
    const Index omega = static_cast<Index>(o.lump_classes.size());
    o.q_distinct.resize(omega);
    for (Index i = 0; i < omega; ++i) o.q_distinct[i] = o.q[o.lump_classes[i].front()];
    o.b = b_raw;
    o.b_lumped = VectorXq::Zero(omega);
    for (Index i = 0; i < omega; ++i)
      for (Index original : o.lump_classes[i]) o.b_lumped[i] += o.b[original];
    // sign normalization: first nonzero lumped entry positive
    for (Index i = 0; i < omega; ++i) {
      if (o.b_lumped[i] == 0) continue;
      if (o.b_lumped[i] < 0) {
        o.b = -o.b;
        o.b_lumped = -o.b_lumped;
      }
      break;
    }
    return o;
  };

  // vertex labeling: of the two orientations, keep the lexicographically
  // larger lumped vector, so reports do not depend on the column order
  Orientation forward = build(segment.vertices[0], segment.vertices[1]);
  Orientation backward = build(segment.vertices[1], segment.vertices[0]);
  auto lex_less = [](const VectorXq& a, const VectorXq& b) {
    for (Index i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
  };
  Orientation& chosen = lex_less(forward.b_lumped, backward.b_lumped) ? backward : forward;
  out.vertex_hi = std::move(chosen.vertex_hi);
  out.vertex_lo = std::move(chosen.vertex_lo);
  out.q = std::move(chosen.q);
  out.q_sorted = std::move(chosen.q_sorted);
  out.q_distinct = std::move(chosen.q_distinct);
  out.permutation = std::move(chosen.permutation);
  out.lump_classes = std::move(chosen.lump_classes);
  out.b = std::move(chosen.b);
  out.b_lumped = std::move(chosen.b_lumped);

  const LumpedConditionFlags flags = lumped_condition_flags(out.b_lumped);
  out.partial_sums_nonneg = flags.partial_sums_nonneg;
  out.partial_sums_nonpos = flags.partial_sums_nonpos;
  out.endpoints_mixed = flags.endpoints_mixed;
  out.applicable = true;
  return out;
}

LumpedConditionFlags lumped_condition_flags(const VectorXq& b_lumped) {
  LumpedConditionFlags out;
  const Index omega = b_lumped.size();
  if (omega == 0) return {true, true, true};
  out.partial_sums_nonneg = true;
  out.partial_sums_nonpos = true;
  Rational prefix = 0;
  for (Index i = 0; i + 1 < omega; ++i) {
    prefix += b_lumped[i];
    if (prefix < 0) out.partial_sums_nonneg = false;
    if (prefix > 0) out.partial_sums_nonpos = false;
  }
  out.endpoints_mixed = b_lumped[0] * b_lumped[omega - 1] < 0;
  return out;
}

std::vector<ClassAnalysis> analyze_all_classes(const PolySystem& sys, const MonomialStructure& ms) {
  std::vector<ClassAnalysis> out;
  for (Index j = 0; j < sys.class_count(); ++j) out.push_back(analyze_class(sys, ms, j));
  return out;
}

std::string to_string(ConditionStatus status) {
  switch (status) {
    case ConditionStatus::pass: return "pass";
    case ConditionStatus::fail: return "fail";
    default: return "not applicable";
  }
}

bool TheoremVerdict::any_failed() const {
  for (const auto& c : conditions)
    if (!c.diagnostic && c.status == ConditionStatus::fail) return true;
  return false;
}

bool TheoremVerdict::any_not_applicable() const {
  for (const auto& c : conditions)
    if (!c.diagnostic && c.status == ConditionStatus::not_applicable) return true;
  return false;
}

TheoremVerdict check_one_class(const ClassAnalysis& analysis) {
  TheoremVerdict out;
  out.theorem = "dep1-one-class";
  if (!analysis.applicable) {
    out.conditions.push_back(
        {"setup", ConditionStatus::not_applicable, analysis.not_applicable_reason});
    return out;
  }
  if (analysis.dependency == 0) {
    out.conditions.push_back({"d = 0", ConditionStatus::pass, "no binomial condition"});
    out.conclusion = "|Y_c| = 1";
    out.passed = true;
    return out;
  }

  const bool sums_ok = analysis.partial_sums_nonneg || analysis.partial_sums_nonpos;
  std::string branch = analysis.partial_sums_nonneg ? ">= 0" : analysis.partial_sums_nonpos ? "<= 0" : "mixed";
  out.conditions.push_back({"partial sums uniform",
                            sums_ok ? ConditionStatus::pass : ConditionStatus::fail,
                            join_sums(analysis.b_lumped) + " " + branch});
  const Rational product =
      analysis.b_lumped[0] * analysis.b_lumped[analysis.b_lumped.size() - 1];
  out.conditions.push_back({"endpoint signs",
                            analysis.endpoints_mixed ? ConditionStatus::pass : ConditionStatus::fail,
                            "b_tilde_1 * b_tilde_omega = " + to_string(product)});
  if (sums_ok && analysis.endpoints_mixed) {
    out.conclusion = "|Y_c| = 1 for all c";
    out.passed = true;
  }
  return out;
}

ExistenceFailureCase existence_failure_case(int sign_first, int sign_last) {
  ExistenceFailureCase out;
  std::ostringstream desc;
  auto word = [](int s) { return s > 0 ? std::string("> 0") : s < 0 ? std::string("< 0") : std::string("= 0"); };
  desc << "b_tilde_1 " << word(sign_first) << " and b_tilde_omega " << word(sign_last) << ": ";
  // f -> 0 at an endpoint when the bordering exponent is positive,
  // f -> infinity when it is negative, finite positive limit when zero
  const bool low_zero = sign_first > 0, low_inf = sign_first < 0;
  const bool high_zero = sign_last > 0, high_inf = sign_last < 0;
  if (low_inf || high_inf) {
    out.bounded_above = false;
    desc << "f bounded below; small c* unreachable";
  } else {
    out.bounded_above = true;
    desc << "f bounded " << ((low_zero || high_zero) ? "above" : "above and below")
         << "; large c* unreachable";
  }
  out.description = desc.str();
  return out;
}

TheoremVerdict check_existence(const ClassAnalysis& analysis) {
  TheoremVerdict out;
  out.theorem = "existence";
  if (!analysis.applicable || analysis.dependency != 1 || analysis.polytope_dim != 1) {
    out.conditions.push_back({"setup", ConditionStatus::not_applicable,
                              analysis.applicable ? "requires d = dim P = 1"
                                                  : analysis.not_applicable_reason});
    return out;
  }
  if (analysis.endpoints_mixed) {
    out.conditions.push_back({"endpoint signs", ConditionStatus::pass,
                              "b_tilde_1 * b_tilde_omega < 0"});
    out.conclusion = "exists for all c";
    out.passed = true;
    return out;
  }
  const ExistenceFailureCase why = existence_failure_case(
      sign_of(analysis.b_lumped[0]), sign_of(analysis.b_lumped[analysis.b_lumped.size() - 1]));
  out.conditions.push_back({"endpoint signs", ConditionStatus::fail, why.description});
  return out;
}

TheoremVerdict check_decomposable(const PolySystem& sys, const MonomialStructure& ms) {
  TheoremVerdict out;
  out.theorem = "dep1-decomposable";

  const auto positive = strictly_positive_kernel_point(sys.coefficients);
  out.conditions.push_back({"(i) positive kernel point",
                            positive ? ConditionStatus::pass : ConditionStatus::fail,
                            positive ? to_string(*positive) : "coefficient cone is empty"});

  Index dep_sum = 0;
  for (Index j = 0; j < sys.class_count(); ++j) dep_sum += class_dependency(sys, j);
  const bool decomposable = ms.dependency == dep_sum;
  out.conditions.push_back({"(ii) d = sum of class dependencies",
                            decomposable ? ConditionStatus::pass : ConditionStatus::fail,
                            "d = " + std::to_string(ms.dependency) + ", sum = " + std::to_string(dep_sum)});

  bool classes_ok = true;
  for (Index j = 0; j < sys.class_count(); ++j) {
    const ClassAnalysis analysis = analyze_class(sys, ms, j);
    const std::string label = "(iii) class " + std::to_string(j + 1);
    if (!analysis.applicable) {
      out.conditions.push_back({label, ConditionStatus::not_applicable, analysis.not_applicable_reason});
      classes_ok = false;
      continue;
    }
    const bool dim_match = analysis.dependency == analysis.polytope_dim && analysis.dependency <= 1;
    const bool sums_ok = analysis.partial_sums_nonneg || analysis.partial_sums_nonpos;
    const bool ok = dim_match && (analysis.dependency == 0 || (sums_ok && analysis.endpoints_mixed));
    std::ostringstream witness;
    witness << "d_j = " << analysis.dependency << ", dim P_j = " << analysis.polytope_dim;
    if (analysis.dependency == 1) witness << ", b_tilde = " << to_string(analysis.b_lumped);
    out.conditions.push_back({label, ok ? ConditionStatus::pass : ConditionStatus::fail, witness.str()});
    classes_ok = classes_ok && ok;
  }

  if (positive && decomposable && classes_ok) {
    out.conclusion = "|Y_c| = 1 for all c";
    out.passed = true;
  }
  return out;
}

TheoremVerdict check_mass_action(const MassActionSystem& sys, const Decomposition& dec) {
  TheoremVerdict out;
  out.theorem = "dep1-mass-action";

  if (!dec.connected_ok || !dec.independent_ok) {
    out.conditions.push_back({"setup", ConditionStatus::not_applicable,
                              dec.connected_ok ? "subnetworks not independent"
                                               : "not applicable: subnetworks not connected"});
    return out;
  }

  const PolySystem ps = polysystem_from_decomposition(dec);
  const MonomialStructure ms = monomial_structure(ps);
  const StructuralReport report = structural_report(sys);

  const auto positive = strictly_positive_kernel_point(ps.coefficients);
  out.conditions.push_back({"(I) ker Gamma_k meets the positive orthant",
                            positive ? ConditionStatus::pass : ConditionStatus::fail,
                            positive ? to_string(*positive) : "coefficient cone is empty"});

  const bool kinetic_eq_diff = image_equal(report.kinetic_basis, ms.diff_basis);
  const bool diff_eq_stoich = image_equal(ms.diff_basis, report.stoich_basis);
  out.conditions.push_back({"(IIa) K = L",
                            kinetic_eq_diff ? ConditionStatus::pass : ConditionStatus::fail,
                            "dim K = " + std::to_string(report.kinetic_basis.cols()) +
                                ", dim L = " + std::to_string(ms.diff_basis.cols())});
  out.conditions.push_back({"(IIb) L = S",
                            diff_eq_stoich ? ConditionStatus::pass : ConditionStatus::fail,
                            "dim L = " + std::to_string(ms.diff_basis.cols()) +
                                ", dim S = " + std::to_string(report.stoich_basis.cols())});

  bool classes_ok = true;
  bool classes_undecided = false;
  for (Index j = 0; j < dec.class_count(); ++j) {
    const Subnetwork& sub = dec.subnetworks[static_cast<size_t>(j)];
    const std::string label = "(III) class " + std::to_string(j + 1);
    const bool dep_ok = sub.dependency <= 1;
    const bool kl_ok = image_equal(sub.kinetic_basis, sub.diff_basis);

    const ClassAnalysis analysis = analyze_class(ps, ms, j);
    std::ostringstream witness;
    witness << "d_j = " << sub.dependency << ", K_j = L_j: " << (kl_ok ? "yes" : "no");

    if (!dep_ok || !kl_ok) {
      out.conditions.push_back({label, ConditionStatus::fail, witness.str()});
      classes_ok = false;
    } else if (sub.dependency == 0) {
      out.conditions.push_back({label, ConditionStatus::pass, witness.str()});
    } else if (!analysis.applicable) {
      out.conditions.push_back({label, ConditionStatus::not_applicable,
                                analysis.not_applicable_reason});
      classes_ok = false;
      classes_undecided = true;
    } else {
      // with K_j = L_j and a nonempty cone, dim P_j = d_j (dimension lemma)
      if (analysis.polytope_dim != sub.dependency)
        throw std::logic_error("check_mass_action: dim P_j != d_j despite K_j = L_j");
      const bool sums_ok = analysis.partial_sums_nonneg || analysis.partial_sums_nonpos;
      const bool ok = sums_ok && analysis.endpoints_mixed;
      witness << ", b_tilde = " << to_string(analysis.b_lumped);
      out.conditions.push_back({label, ok ? ConditionStatus::pass : ConditionStatus::fail, witness.str()});
      classes_ok = classes_ok && ok;
    }

    std::ostringstream diag;
    diag << "dim P_" << (j + 1) << " = "
         << (analysis.polytope_dim >= 0 ? std::to_string(analysis.polytope_dim) : "empty cone")
         << ", t'_" << (j + 1) << " = " << sub.stats.nonsingleton_terminal_count;
    out.conditions.push_back({"(diagnostic) class " + std::to_string(j + 1),
                              ConditionStatus::pass, diag.str(), true});
    if (analysis.polytope_dim >= 0 && analysis.polytope_dim <= 1 &&
        sub.stats.nonsingleton_terminal_count > 1)
      throw std::logic_error("check_mass_action: dim P <= 1 but t' > 1");
  }

  if (positive && classes_ok) {
    std::vector<std::string> parts;
    if (kinetic_eq_diff) parts.push_back("unique positive equilibrium per kinetic class");
    if (diff_eq_stoich) parts.push_back("unique positive equilibrium per stoichiometric class");
    if (!parts.empty()) {
      out.conclusion = parts[0];
      for (size_t i = 1; i < parts.size(); ++i) out.conclusion += "; " + parts[i];
      out.passed = true;
    }
  }
  (void)classes_undecided;
  return out;
}

TheoremVerdict check_deficiency_one(const MassActionSystem& sys, const Decomposition& dec) {
  TheoremVerdict out;
  out.theorem = "def1";

  if (!dec.connected_ok || !dec.independent_ok) {
    out.conditions.push_back({"setup", ConditionStatus::not_applicable,
                              dec.connected_ok ? "subnetworks not independent"
                                               : "not applicable: subnetworks not connected"});
    return out;
  }

  bool network_ok = true;
  for (Index j = 0; j < dec.class_count(); ++j) {
    const Subnetwork& sub = dec.subnetworks[static_cast<size_t>(j)];
    const bool deficiency_ok = sub.deficiency <= 1;
    out.conditions.push_back({"(i) class " + std::to_string(j + 1) + ": delta_j <= 1",
                              deficiency_ok ? ConditionStatus::pass : ConditionStatus::fail,
                              "delta_j = " + std::to_string(sub.deficiency)});
    const bool terminal_ok = sub.stats.terminal_count == 1;
    out.conditions.push_back({"(ii) class " + std::to_string(j + 1) + ": t_j = 1",
                              terminal_ok ? ConditionStatus::pass : ConditionStatus::fail,
                              "t_j = " + std::to_string(sub.stats.terminal_count)});
    network_ok = network_ok && deficiency_ok && terminal_ok;

    // consequences of t_j = 1 with a positive kernel point, checked exactly
    if (sub.stats.terminal_count == 1 && strictly_positive_kernel_point(sub.matrices.gamma)) {
      if (!image_equal(sub.kinetic_basis, sub.diff_basis) ||
          !image_equal(sub.diff_basis, sub.stoich_basis))
        throw std::logic_error("check_deficiency_one: K_j = L_j = S_j violated");
      if (sub.dependency != sub.deficiency + sub.stats.nonsingleton_terminal_count - 1)
        throw std::logic_error("check_deficiency_one: d_j != delta_j + t'_j - 1");
    }
  }

  const GraphStats stats = graph_stats(sys.network.graph);
  const auto positive = strictly_positive_kernel_point(dec.combined.gamma);
  std::string witness = positive ? to_string(*positive) : "coefficient cone is empty";
  if (stats.weakly_reversible) witness += " (weakly reversible: exists for all rate constants)";
  out.conditions.push_back({"(iii) positive equilibrium exists",
                            positive ? ConditionStatus::pass : ConditionStatus::fail, witness});

  if (network_ok && positive) {
    out.conclusion = "unique positive equilibrium per stoichiometric class";
    if (stats.weakly_reversible) out.conclusion += " for all rate constants";
    out.passed = true;
  }
  return out;
}

}  // namespace crn
