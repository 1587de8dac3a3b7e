#pragma once

#include "crn/decomposition.hpp"
#include "crn/exact_linalg.hpp"

#include <vector>

namespace crn {

/// Parametrized polynomial system A (c o x^B) = 0 with column classes such
/// that ker A is the direct product of the per-class kernels.
struct PolySystem {
  MatrixXq coefficients;  // A, l x m
  MatrixXq exponents;     // B, n x m
  std::vector<Index> class_sizes;
  VectorXq scale;  // c > 0

  Index monomial_count() const { return coefficients.cols(); }
  Index class_count() const { return static_cast<Index>(class_sizes.size()); }
  std::vector<Index> class_offsets() const;
};

void validate(const PolySystem& sys);

/// The positive-equilibrium system Gamma_k x^{Y*_s} = 0 of a decomposed
/// mass-action system: A = Gamma_k, B = Y*_s, c = 1, one class per subnetwork.
PolySystem polysystem_from_decomposition(const Decomposition& dec);

struct MonomialStructure {
  MatrixXq star_incidence;  // I, m x (m - ell), block star graphs rooted at
                            // the last column of each class
  MatrixXq difference;      // M = B I
  MatrixXq diff_basis;      // basis of L = im M
  Index dependency = 0;     // d = m - ell - dim L = dim ker(Bcal)
  MatrixXq cayley;          // J, ell x m
  MatrixXq cayley_stack;    // Bcal = (B over J)
  KernelBasis dependency_basis;  // D = ker Bcal
  MatrixXq exponentiation;  // E = I M*
};

/// Builds I, M, L, d, J, Bcal, D, and E; the two computations of the
/// dependency (via M and via Bcal) are asserted to agree.
MonomialStructure monomial_structure(const PolySystem& sys);

/// Per-class dependency: m_j - 1 - dim L_j.
Index class_dependency(const PolySystem& sys, Index class_index);

struct PolytopeSegment {
  Index dim = 0;                  // dim P_j
  std::vector<VectorXq> vertices; // 1 point when dim 0, 2 vertices when dim 1,
                                  // empty when dim >= 2
};

/// Exact vertices of the coefficient polytope of one class, each normalized
/// to coordinate sum 1. Throws std::domain_error("no positive kernel point")
/// when the class coefficient cone is empty.
PolytopeSegment coefficient_polytope_segment(const PolySystem& sys, Index class_index);

struct FiberSolution {
  Eigen::VectorXd x_star;         // particular positive solution
  MatrixXq lperp_basis;           // exact basis of L-perp
  Eigen::VectorXd polytope_point; // the y used
  double residual = 0;            // max-norm of A (c o x^B)
};

/// Reconstructs x = (y o c^-1)^E from a point y of the coefficient polytope
/// satisfying the binomial conditions y^z = c^z on D (checked in logs).
FiberSolution fiber_from_polytope_point(const MonomialStructure& ms, const PolySystem& sys,
                                        const Eigen::VectorXd& y);

/// A (c o x^B) evaluated in doubles.
Eigen::VectorXd residual_vector(const PolySystem& sys, const Eigen::VectorXd& x);

}  // namespace crn
