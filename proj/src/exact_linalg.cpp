#include "crn/exact_linalg.hpp"

#include <stdexcept>

namespace crn {

RowEchelon rref(const MatrixXq& m) {
  RowEchelon out;
  out.reduced = m;
  MatrixXq& a = out.reduced;
  const Index rows = a.rows(), cols = a.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = -1;
    for (Index r = row; r < rows; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(row));
    a.row(row) /= a(row, col);
    for (Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col) == 0) continue;
      a.row(r) -= a(r, col) * a.row(row);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  return out;
}

Index rank(const MatrixXq& m) { return rref(m).rank(); }

KernelBasis kernel_basis(const MatrixXq& m) {
  const RowEchelon re = rref(m);
  KernelBasis out;
  out.ambient_dim = m.cols();
  std::vector<bool> is_pivot(m.cols(), false);
  for (Index p : re.pivot_columns) is_pivot[p] = true;
  for (Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.free_columns.push_back(c);

  out.vectors = MatrixXq::Zero(m.cols(), static_cast<Index>(out.free_columns.size()));
  for (size_t i = 0; i < out.free_columns.size(); ++i) {
    const Index f = out.free_columns[i];
    out.vectors(f, static_cast<Index>(i)) = 1;
    for (size_t r = 0; r < re.pivot_columns.size(); ++r)
      out.vectors(re.pivot_columns[r], static_cast<Index>(i)) = -re.reduced(static_cast<Index>(r), f);
  }
  return out;
}

MatrixXq invert(const MatrixXq& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert: matrix not square");
  const Index n = m.rows();
  MatrixXq work(n, 2 * n);
  work << m, MatrixXq::Identity(n, n);
  RowEchelon re = rref(work);
  if (re.rank() < n || (re.rank() > 0 && re.pivot_columns[n - 1] >= n))
    throw std::invalid_argument("invert: matrix is singular");
  return re.reduced.rightCols(n);
}

MatrixXq g_inverse(const MatrixXq& m) {
  const RowEchelon re = rref(m);
  const Index r = re.rank();
  if (r == 0) return MatrixXq::Zero(m.cols(), m.rows());
  MatrixXq f(m.rows(), r);
  for (Index j = 0; j < r; ++j) f.col(j) = m.col(re.pivot_columns[j]);
  const MatrixXq g = re.reduced.topRows(r);
  return g.transpose() * invert(g * g.transpose()) * invert(f.transpose() * f) * f.transpose();
}

MatrixXq image_basis(const MatrixXq& m) {
  const RowEchelon re = rref(m);
  MatrixXq out(m.rows(), re.rank());
  for (Index j = 0; j < re.rank(); ++j) out.col(j) = m.col(re.pivot_columns[j]);
  return out;
}

MatrixXq orthogonal_complement(const MatrixXq& m) {
  return kernel_basis(MatrixXq(m.transpose())).vectors;
}

bool image_contained(const MatrixXq& inner, const MatrixXq& outer) {
  if (inner.rows() != outer.rows()) throw std::invalid_argument("image_contained: row mismatch");
  MatrixXq joined(outer.rows(), outer.cols() + inner.cols());
  joined << outer, inner;
  return rank(joined) == rank(outer);
}

bool image_equal(const MatrixXq& a, const MatrixXq& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("image_equal: row mismatch");
  MatrixXq joined(a.rows(), a.cols() + b.cols());
  joined << a, b;
  const Index joint = rank(joined);
  return joint == rank(a) && joint == rank(b);
}

namespace {

// Phase-one simplex (Bland's rule) for { alpha : U alpha >= 1 }.
// Variables: alpha+ (q), alpha- (q), surplus (p), artificial (p).
struct Phase1Result {
  bool feasible = false;
  VectorXq alpha;
  VectorXq dual;  // Farkas certificate when infeasible
};

Phase1Result phase_one(const MatrixXq& u) {
  const Index p = u.rows(), q = u.cols();
  Phase1Result out;
  if (p == 0) {
    out.feasible = true;
    out.alpha = VectorXq::Zero(q);
    return out;
  }
  const Index ncols = 2 * q + 2 * p;
  MatrixXq t(p + 1, ncols + 1);
  t.setZero();
  t.block(0, 0, p, q) = u;
  t.block(0, q, p, q) = -u;
  t.block(0, 2 * q, p, p) = -MatrixXq::Identity(p, p);
  t.block(0, 2 * q + p, p, p) = MatrixXq::Identity(p, p);
  t.col(ncols).head(p).setConstant(1);

  // objective row: minimize the artificials; price out the initial basis
  for (Index j = 2 * q + p; j < ncols; ++j) t(p, j) = 1;
  for (Index i = 0; i < p; ++i) t.row(p) -= t.row(i);

  std::vector<Index> basis(p);
  for (Index i = 0; i < p; ++i) basis[i] = 2 * q + p + i;

  for (;;) {
    Index enter = -1;
    for (Index j = 0; j < ncols; ++j)
      if (t(p, j) < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    Index leave = -1;
    Rational best_ratio = 0;
    for (Index i = 0; i < p; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, ncols) / t(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("phase_one: unbounded phase-one objective");

    t.row(leave) /= t(leave, enter);
    for (Index i = 0; i <= p; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[leave] = enter;
  }

  const Rational optimum = -t(p, ncols);
  if (optimum == 0) {
    VectorXq alpha = VectorXq::Zero(q);
    for (Index i = 0; i < p; ++i) {
      if (basis[i] < q)
        alpha[basis[i]] += t(i, ncols);
      else if (basis[i] < 2 * q)
        alpha[basis[i] - q] -= t(i, ncols);
    }
    out.feasible = true;
    out.alpha = alpha;
    return out;
  }

  // dual values from the reduced costs of the artificial columns
  VectorXq z(p);
  for (Index i = 0; i < p; ++i) z[i] = 1 - t(p, 2 * q + p + i);
  out.dual = z;
  return out;
}

}  // namespace

PositiveKernelWitness strictly_positive_kernel_point_certified(const MatrixXq& m) {
  PositiveKernelWitness out;
  const KernelBasis basis = kernel_basis(m);
  const MatrixXq& u = basis.vectors;
  if (m.cols() == 0) {
    out.farkas = VectorXq();
    return out;
  }
  if (basis.dimension() == 0) {
    out.farkas = VectorXq::Constant(m.cols(), 1);
    return out;
  }

  const Phase1Result lp = phase_one(u);
  if (lp.feasible) {
    VectorXq v = u * lp.alpha;
    for (Index i = 0; i < v.size(); ++i)
      if (v[i] < 1) throw std::logic_error("strictly_positive_kernel_point: infeasible point returned");
    if ((m * v).cwiseAbs().maxCoeff() != 0)
      throw std::logic_error("strictly_positive_kernel_point: point not in kernel");
    out.point = v;
    return out;
  }

  // check the Farkas certificate exactly: z >= 0, z^T U = 0, sum(z) > 0
  const VectorXq& z = lp.dual;
  Rational total = 0;
  for (Index i = 0; i < z.size(); ++i) {
    if (z[i] < 0) throw std::logic_error("strictly_positive_kernel_point: negative Farkas entry");
    total += z[i];
  }
  if (total <= 0) throw std::logic_error("strictly_positive_kernel_point: vanishing Farkas certificate");
  VectorXq zu = u.transpose() * z;
  for (Index i = 0; i < zu.size(); ++i)
    if (zu[i] != 0) throw std::logic_error("strictly_positive_kernel_point: Farkas certificate not in ker U^T");
  out.farkas = z;
  return out;
}

std::optional<VectorXq> strictly_positive_kernel_point(const MatrixXq& m) {
  return strictly_positive_kernel_point_certified(m).point;
}

}  // namespace crn
