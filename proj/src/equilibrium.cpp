#include "crn/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crn {

UnivariateProfile univariate_profile(const ClassAnalysis& analysis, const VectorXq& c_block) {
  if (!analysis.applicable || analysis.dependency != 1 || analysis.polytope_dim != 1)
    throw std::invalid_argument("univariate_profile: requires d_j = dim P_j = 1");
  if (c_block.size() != analysis.b.size())
    throw std::invalid_argument("univariate_profile: c block has wrong length");

  UnivariateProfile out;
  out.q_distinct = to_double(analysis.q_distinct);
  out.b_lumped = to_double(analysis.b_lumped);
  const Index omega = analysis.b_lumped.size();
  auto sign_of = [](const Rational& v) { return v > 0 ? 1 : v < 0 ? -1 : 0; };
  out.sign_first = sign_of(analysis.b_lumped[0]);
  out.sign_last = sign_of(analysis.b_lumped[omega - 1]);
  out.low_limit = out.sign_first > 0   ? LimitKind::zero
                  : out.sign_first < 0 ? LimitKind::infinite
                                       : LimitKind::finite;
  out.high_limit = out.sign_last > 0   ? LimitKind::zero
                   : out.sign_last < 0 ? LimitKind::infinite
                                       : LimitKind::finite;
  out.monotone_verified =
      (analysis.partial_sums_nonneg || analysis.partial_sums_nonpos) && analysis.endpoints_mixed;
  out.increasing = analysis.partial_sums_nonneg;

  // c* = c^b * y-bar^{-b} with y-bar the segment midpoint
  double log_c_star = 0;
  for (Index i = 0; i < analysis.b.size(); ++i) {
    const double bi = to_double(analysis.b[i]);
    const double y_bar = 0.5 * (to_double(analysis.vertex_hi[i]) + to_double(analysis.vertex_lo[i]));
    log_c_star += bi * (std::log(to_double(c_block[i])) - std::log(y_bar));
  }
  out.log_c_star = log_c_star;
  return out;
}

double log_f(const UnivariateProfile& profile, double t) {
  double out = 0;
  for (Index i = 0; i < profile.q_distinct.size(); ++i)
    out += profile.b_lumped[i] * std::log1p(t * profile.q_distinct[i]);
  return out;
}

namespace {

// log f with the gap to one endpoint tracked in log space: t = -1 + e^u
// (side = -1) or t = 1 - e^u (side = +1). The factor bordering that endpoint
// is evaluated symbolically as b-tilde * u, which stays accurate for roots
// within machine distance of the endpoint.
double log_f_near_endpoint(const UnivariateProfile& profile, int side, double u) {
  const Index omega = profile.q_distinct.size();
  const double t = side < 0 ? -1 + std::exp(u) : 1 - std::exp(u);
  double out = side < 0 ? profile.b_lumped[0] * u : profile.b_lumped[omega - 1] * u;
  for (Index i = side < 0 ? 1 : 0; i < (side < 0 ? omega : omega - 1); ++i)
    out += profile.b_lumped[i] * std::log1p(t * profile.q_distinct[i]);
  return out;
}

struct Bisection {
  double argument = 0;
  double value = 0;  // residual at the returned argument
};

template <typename F>
Bisection bisect(F&& g, double lo, double hi) {
  Bisection out{lo, std::abs(g(lo))};
  const double hi_val = std::abs(g(hi));
  if (hi_val < out.value) out = {hi, hi_val};
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double val = g(mid);
    if (std::abs(val) < out.value) out = {mid, std::abs(val)};
    if (out.value <= 1e-13 || !(lo < mid && mid < hi)) break;
    (val < 0 ? lo : hi) = mid;
  }
  return out;
}

}  // namespace

double solve_univariate(const UnivariateProfile& profile) {
  if (!profile.monotone_verified)
    throw std::invalid_argument("solve_univariate: profile not verified monotone");

  const double direction = profile.increasing ? 1.0 : -1.0;
  auto g = [&](double t) { return direction * (log_f(profile, t) - profile.log_c_star); };
  // endpoint-cap evaluations in u = log(gap); plain log f saturates once the
  // gap falls below the double spacing at 1
  auto g_left = [&](double u) {
    return direction * (log_f_near_endpoint(profile, -1, u) - profile.log_c_star);
  };
  auto g_right = [&](double u) {
    return direction * (log_f_near_endpoint(profile, 1, u) - profile.log_c_star);
  };

  // expand the bracket toward the endpoints; limits there are 0 and infinity
  const double start_gap = std::pow(2.0, -5);
  const double min_gap = std::pow(2.0, -60);
  double lo_gap = start_gap;
  while (g_left(std::log(lo_gap)) > 0 && lo_gap > min_gap) lo_gap *= 0.5;
  double hi_gap = start_gap;
  while (g_right(std::log(hi_gap)) < 0 && hi_gap > min_gap) hi_gap *= 0.5;
  if (!(g_left(std::log(lo_gap)) <= 0 && g_right(std::log(hi_gap)) >= 0))
    throw std::runtime_error("solve_univariate: failed to bracket the root");
  const double lo = -1 + lo_gap, hi = 1 - hi_gap;

  Bisection result;
  if (lo_gap < start_gap) {
    // root inside the left cap: bisect in u = log(1 + t)
    result = bisect(g_left, std::log(lo_gap), std::log(2 * start_gap));
    result.argument = -1 + std::exp(result.argument);
  } else if (hi_gap < start_gap) {
    // root inside the right cap: bisect in u = log(1 - t); g decreases in u
    auto flipped = [&](double u) { return -g_right(u); };
    result = bisect(flipped, std::log(hi_gap), std::log(2 * start_gap));
    result.argument = 1 - std::exp(result.argument);
  } else {
    result = bisect(g, lo, hi);
  }

  if (result.value > 1e-12)
    throw std::runtime_error("solve_univariate: bisection did not reach tolerance");
  return result.argument;
}

FiberSolution reconstruct_x(const MonomialStructure& ms, const PolySystem& sys,
                            const Eigen::VectorXd& y) {
  return fiber_from_polytope_point(ms, sys, y);
}

BirchResult birch_intersect_detailed(const Eigen::VectorXd& x_star, const MatrixXq& subspace_basis,
                                     const Eigen::VectorXd& anchor) {
  for (Index i = 0; i < x_star.size(); ++i)
    if (!(x_star[i] > 0)) throw std::invalid_argument("birch: x_star not positive");

  BirchResult out;
  const Eigen::MatrixXd w = to_double(orthogonal_complement(subspace_basis));
  if (w.cols() == 0) {
    out.point = x_star;
    return out;
  }

  const Eigen::VectorXd target = w.transpose() * anchor;
  auto potential = [&](const Eigen::VectorXd& lambda) {
    return (x_star.array() * (w * lambda).array().exp()).sum() - target.dot(lambda);
  };

  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(w.cols());
  for (int iter = 1; iter <= 200; ++iter) {
    const Eigen::VectorXd x = x_star.array() * (w * lambda).array().exp();
    const Eigen::VectorXd grad = w.transpose() * x - target;
    const double grad_norm = grad.cwiseAbs().maxCoeff();
    if (grad_norm <= 1e-10) {
      out.point = x;
      out.iterations = iter - 1;
      return out;
    }
    const Eigen::MatrixXd hessian = w.transpose() * x.asDiagonal() * w;
    const Eigen::VectorXd step = hessian.ldlt().solve(-grad);

    // backtrack only while far from the optimum; in the quadratic basin the
    // potential decrease falls below float granularity and Armijo would stall
    double alpha = 1.0;
    if (grad_norm > 1e-6) {
      const double phi0 = potential(lambda);
      const double slope = grad.dot(step);
      while (alpha > 1e-12 && potential(lambda + alpha * step) > phi0 + 1e-4 * alpha * slope)
        alpha *= 0.5;
    }
    lambda += alpha * step;
  }
  throw std::runtime_error("Birch Newton failed to converge");
}

Eigen::VectorXd birch_intersect(const Eigen::VectorXd& x_star, const MatrixXq& subspace_basis,
                                const Eigen::VectorXd& anchor) {
  return birch_intersect_detailed(x_star, subspace_basis, anchor).point;
}

EquilibriumResult solve_equilibrium(const MassActionSystem& sys, const Decomposition& dec,
                                    const TheoremVerdict& verdict, const Eigen::VectorXd& anchor,
                                    CompatibilityClass kind) {
  const bool want_stoich = kind == CompatibilityClass::stoichiometric;
  bool authorized = false;
  if (verdict.passed && verdict.theorem == "def1" && want_stoich) authorized = true;
  if (verdict.passed && verdict.theorem == "dep1-mass-action") {
    const std::string needle = want_stoich ? "(IIb) L = S" : "(IIa) K = L";
    for (const auto& condition : verdict.conditions)
      if (condition.label == needle && condition.status == ConditionStatus::pass) authorized = true;
  }
  if (!authorized)
    throw std::invalid_argument(
        "solve_equilibrium: verdict does not conclude uniqueness for the requested class");
  if (anchor.size() != sys.network.species_count())
    throw std::invalid_argument("solve_equilibrium: anchor has wrong dimension");
  for (Index i = 0; i < anchor.size(); ++i)
    if (!(anchor[i] > 0)) throw std::invalid_argument("solve_equilibrium: anchor not positive");

  const PolySystem ps = polysystem_from_decomposition(dec);
  const MonomialStructure ms = monomial_structure(ps);
  const std::vector<Index> offsets = ps.class_offsets();

  EquilibriumResult out;
  out.anchor = anchor;
  Eigen::VectorXd y(ps.monomial_count());
  for (Index j = 0; j < ps.class_count(); ++j) {
    const ClassAnalysis analysis = analyze_class(ps, ms, j);
    if (!analysis.applicable)
      throw std::runtime_error("solve_equilibrium: class " + std::to_string(j + 1) + " " +
                               analysis.not_applicable_reason);
    if (analysis.dependency == 0) {
      const PolytopeSegment segment = coefficient_polytope_segment(ps, j);
      const Eigen::VectorXd point = to_double(segment.vertices[0]);
      y.segment(offsets[j], ps.class_sizes[j]) = point;
      out.t_roots.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      const VectorXq c_block = ps.scale.segment(offsets[j], ps.class_sizes[j]);
      const UnivariateProfile profile = univariate_profile(analysis, c_block);
      const double t = solve_univariate(profile);
      const Eigen::VectorXd mid =
          0.5 * (to_double(analysis.vertex_hi) + to_double(analysis.vertex_lo));
      const Eigen::VectorXd half =
          0.5 * (to_double(analysis.vertex_hi) - to_double(analysis.vertex_lo));
      y.segment(offsets[j], ps.class_sizes[j]) = mid + t * half;
      out.t_roots.push_back(t);
    }
  }

  const FiberSolution fiber = fiber_from_polytope_point(ms, ps, y);
  out.x_star = fiber.x_star;
  out.lperp_basis = fiber.lperp_basis;

  const StructuralReport report = structural_report(sys);
  const MatrixXq& basis = want_stoich ? report.stoich_basis : report.kinetic_basis;
  const BirchResult birch = birch_intersect_detailed(out.x_star, basis, anchor);
  out.x_in_class = birch.point;
  out.birch_iterations = birch.iterations;

  const Eigen::MatrixXd wperp = to_double(orthogonal_complement(basis));
  out.membership_gap = wperp.cols() == 0
                           ? 0.0
                           : (wperp.transpose() * (out.x_in_class - anchor)).cwiseAbs().maxCoeff();

  const Eigen::VectorXd monomials = source_monomials(ps.exponents, out.x_in_class);
  const Eigen::MatrixXd gamma = to_double(ps.coefficients);
  out.residual = (gamma * monomials).cwiseAbs().maxCoeff();
  const double bound = 1e-8 * gamma.cwiseAbs().maxCoeff() *
                       std::max(1.0, monomials.cwiseAbs().maxCoeff());
  if (out.residual > bound)
    throw std::runtime_error("solve_equilibrium: residual exceeds tolerance");

  out.unique_in_class = true;
  return out;
}

}  // namespace crn
