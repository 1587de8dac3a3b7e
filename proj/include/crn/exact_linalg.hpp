#pragma once

#include "crn/rational.hpp"

#include <optional>
#include <vector>

namespace crn {

struct RowEchelon {
  MatrixXq reduced;
  std::vector<Index> pivot_columns;

  Index rank() const { return static_cast<Index>(pivot_columns.size()); }
};

/// Unique reduced row echelon form with the list of pivot columns.
RowEchelon rref(const MatrixXq& m);

Index rank(const MatrixXq& m);

/// Null-space basis in RREF free-variable canonical form: column i is the
/// unique kernel vector with coordinate free_columns[i] equal to 1 and all
/// other free coordinates equal to 0.
struct KernelBasis {
  Index ambient_dim = 0;
  std::vector<Index> free_columns;
  MatrixXq vectors;  // ambient_dim x nullity

  Index dimension() const { return vectors.cols(); }
};

KernelBasis kernel_basis(const MatrixXq& m);

/// Exact inverse of a nonsingular square matrix.
MatrixXq invert(const MatrixXq& m);

/// Generalized inverse with m * g * m == m, built from the rank factorization
/// m = F G (F = pivot columns, G = nonzero RREF rows):
/// g = G^T (G G^T)^{-1} (F^T F)^{-1} F^T.
MatrixXq g_inverse(const MatrixXq& m);

/// Pivot columns of m, as a basis of its column space.
MatrixXq image_basis(const MatrixXq& m);

/// Basis of (im m)^perp, i.e. of ker m^T.
MatrixXq orthogonal_complement(const MatrixXq& m);

bool image_contained(const MatrixXq& inner, const MatrixXq& outer);
bool image_equal(const MatrixXq& a, const MatrixXq& b);

/// Outcome of the strict-positivity feasibility test on ker m.
/// When no strictly positive kernel point exists, `farkas` holds an exact
/// infeasibility certificate z >= 0 with z^T U = 0 and sum(z) > 0, where U is
/// the kernel basis of m (so v >= 1 has no solution v in ker m).
struct PositiveKernelWitness {
  std::optional<VectorXq> point;
  VectorXq farkas;
};

PositiveKernelWitness strictly_positive_kernel_point_certified(const MatrixXq& m);

/// Some v with m v = 0 and every component > 0, or nothing if the cone
/// ker m intersected with the positive orthant is empty. Exact rational
/// phase-one simplex (Bland's rule) on { v in ker m : v >= 1 }.
std::optional<VectorXq> strictly_positive_kernel_point(const MatrixXq& m);

}  // namespace crn
