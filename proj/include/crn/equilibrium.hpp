#pragma once

#include "crn/theorems.hpp"

#include <vector>

namespace crn {

enum class LimitKind { zero, finite, infinite };

/// The binomial condition of one d = 1 class reduced to a single variable:
/// f(t) = prod_i (1 + t q-tilde_i)^{b-tilde_i} = c* on (-1, 1).
struct UnivariateProfile {
  Eigen::VectorXd q_distinct;  // descending, first entry 1, last entry -1
  Eigen::VectorXd b_lumped;
  int sign_first = 0;  // exact sign of b-tilde_1
  int sign_last = 0;   // exact sign of b-tilde_omega
  LimitKind low_limit = LimitKind::finite;   // f at t -> -1
  LimitKind high_limit = LimitKind::finite;  // f at t -> +1
  bool monotone_verified = false;  // uniform partial sums and mixed endpoints
  bool increasing = false;
  double log_c_star = 0;  // log of c^b * y-bar^{-b}
};

UnivariateProfile univariate_profile(const ClassAnalysis& analysis, const VectorXq& c_block);

double log_f(const UnivariateProfile& profile, double t);

/// Bisection on log f(t) - log c* with bracket expansion toward the
/// endpoints; requires a verified monotone profile.
double solve_univariate(const UnivariateProfile& profile);

/// Delegates to the fiber reconstruction; the residual is asserted there.
FiberSolution reconstruct_x(const MonomialStructure& ms, const PolySystem& sys,
                            const Eigen::VectorXd& y);

struct BirchResult {
  Eigen::VectorXd point;
  int iterations = 0;
};

/// The unique point of (anchor + U) intersect (x_star o e^{U-perp}), via
/// damped Newton on the strictly convex potential
/// phi(lambda) = sum_i x_star_i e^{(W lambda)_i} - (W^T anchor) . lambda.
BirchResult birch_intersect_detailed(const Eigen::VectorXd& x_star, const MatrixXq& subspace_basis,
                                     const Eigen::VectorXd& anchor);

Eigen::VectorXd birch_intersect(const Eigen::VectorXd& x_star, const MatrixXq& subspace_basis,
                                const Eigen::VectorXd& anchor);

enum class CompatibilityClass { stoichiometric, kinetic };

struct EquilibriumResult {
  Eigen::VectorXd x_star;       // particular solution on the fiber
  MatrixXq lperp_basis;
  bool unique_in_class = false;
  Eigen::VectorXd anchor;
  Eigen::VectorXd x_in_class;   // Birch intersection with the anchor's class
  double residual = 0;
  double membership_gap = 0;    // max projection of x_in_class - anchor onto U-perp
  std::vector<double> t_roots;  // per class, NaN where dim P_j = 0
  int birch_iterations = 0;
};

/// Full pipeline: per-class polytope point (direct or via the univariate
/// root), fiber reconstruction, Birch intersection with the anchor's
/// stoichiometric or kinetic compatibility class.
EquilibriumResult solve_equilibrium(const MassActionSystem& sys, const Decomposition& dec,
                                    const TheoremVerdict& verdict, const Eigen::VectorXd& anchor,
                                    CompatibilityClass kind);

}  // namespace crn
