#include "crn/polysystem.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace crn {

std::vector<Index> PolySystem::class_offsets() const {
  std::vector<Index> out(class_sizes.size() + 1, 0);
  for (size_t j = 0; j < class_sizes.size(); ++j) out[j + 1] = out[j] + class_sizes[j];
  return out;
}

void validate(const PolySystem& sys) {
  Index total = 0;
  for (Index size : sys.class_sizes) {
    if (size < 1) throw std::invalid_argument("polysystem: empty class");
    total += size;
  }
  if (total != sys.coefficients.cols())
    throw std::invalid_argument("polysystem: class sizes do not partition the columns");
  if (sys.exponents.cols() != sys.coefficients.cols())
    throw std::invalid_argument("polysystem: A and B column mismatch");
  if (sys.scale.size() != sys.coefficients.cols())
    throw std::invalid_argument("polysystem: c has wrong length");
  for (Index i = 0; i < sys.scale.size(); ++i)
    if (sys.scale[i] <= 0) throw std::invalid_argument("polysystem: c not positive");

  // ker A must be the direct product of the per-class kernels
  const std::vector<Index> offsets = sys.class_offsets();
  Index kernel_sum = 0;
  for (size_t j = 0; j < sys.class_sizes.size(); ++j)
    kernel_sum +=
        kernel_basis(sys.coefficients.middleCols(offsets[j], sys.class_sizes[j])).dimension();
  if (kernel_sum != kernel_basis(sys.coefficients).dimension())
    throw std::invalid_argument("system not class-decomposed");
}

PolySystem polysystem_from_decomposition(const Decomposition& dec) {
  PolySystem sys;
  sys.coefficients = dec.combined.gamma;
  sys.exponents = dec.combined.source_complex_matrix;
  sys.class_sizes = dec.class_sizes();
  sys.scale = VectorXq::Constant(sys.coefficients.cols(), 1);
  validate(sys);
  return sys;
}

MonomialStructure monomial_structure(const PolySystem& sys) {
  validate(sys);
  MonomialStructure out;
  const Index m = sys.monomial_count();
  const Index ell = sys.class_count();
  const std::vector<Index> offsets = sys.class_offsets();

  out.star_incidence = MatrixXq::Zero(m, m - ell);
  out.cayley = MatrixXq::Zero(ell, m);
  Index col = 0;
  for (Index j = 0; j < ell; ++j) {
    const Index size = sys.class_sizes[j];
    for (Index i = 0; i + 1 < size; ++i, ++col) {
      out.star_incidence(offsets[j] + i, col) = 1;
      out.star_incidence(offsets[j] + size - 1, col) = -1;
    }
    out.cayley.block(j, offsets[j], 1, size).setConstant(1);
  }

  out.difference = sys.exponents * out.star_incidence;
  out.diff_basis = image_basis(out.difference);
  out.dependency = m - ell - out.diff_basis.cols();

  out.cayley_stack.resize(sys.exponents.rows() + ell, m);
  out.cayley_stack << sys.exponents, out.cayley;
  out.dependency_basis = kernel_basis(out.cayley_stack);
  if (out.dependency_basis.dimension() != out.dependency)
    throw std::logic_error("monomial_structure: dependency computed two ways disagrees");

  out.exponentiation = out.star_incidence * g_inverse(out.difference);
  return out;
}

Index class_dependency(const PolySystem& sys, Index class_index) {
  const std::vector<Index> offsets = sys.class_offsets();
  const Index size = sys.class_sizes[class_index];
  MatrixXq block = sys.exponents.middleCols(offsets[class_index], size);
  MatrixXq stacked(block.rows() + 1, size);
  stacked << block, MatrixXq::Constant(1, size, 1);
  return kernel_basis(stacked).dimension();
}

namespace {

VectorXq simplex_normalized(const VectorXq& v) {
  Rational total = 0;
  for (Index i = 0; i < v.size(); ++i) total += v[i];
  if (total == 0) throw std::logic_error("simplex_normalized: zero coordinate sum");
  return v / total;
}

}  // namespace

PolytopeSegment coefficient_polytope_segment(const PolySystem& sys, Index class_index) {
  validate(sys);
  const std::vector<Index> offsets = sys.class_offsets();
  const Index size = sys.class_sizes[class_index];
  const MatrixXq block = sys.coefficients.middleCols(offsets[class_index], size);
  const KernelBasis kernel = kernel_basis(block);

  PolytopeSegment out;
  if (kernel.dimension() == 0) throw std::domain_error("no positive kernel point");

  if (kernel.dimension() == 1) {
    VectorXq v = kernel.vectors.col(0);
    bool positive = true, negative = true;
    for (Index i = 0; i < v.size(); ++i) {
      positive = positive && v[i] > 0;
      negative = negative && v[i] < 0;
    }
    if (negative) v = -v;
    if (!positive && !negative) throw std::domain_error("no positive kernel point");
    out.dim = 0;
    out.vertices.push_back(simplex_normalized(v));
    return out;
  }

  if (kernel.dimension() >= 3) {
    if (!strictly_positive_kernel_point(block))
      throw std::domain_error("no positive kernel point");
    out.dim = kernel.dimension() - 1;
    return out;
  }

  // two-dimensional kernel: enumerate the extreme rays of ker(A_j) meeting
  // the nonnegative orthant; each lies on some coordinate hyperplane
  const VectorXq u = kernel.vectors.col(0);
  const VectorXq w = kernel.vectors.col(1);
  std::set<std::vector<Rational>> rays;
  for (Index i = 0; i < size; ++i) {
    if (u[i] == 0 && w[i] == 0) continue;
    for (int sign : {1, -1}) {
      const Rational a = sign * w[i];
      const Rational b = Rational(-sign) * u[i];
      VectorXq v = a * u + b * w;
      bool nonneg = true, nonzero = false;
      for (Index r = 0; r < v.size(); ++r) {
        if (v[r] < 0) nonneg = false;
        if (v[r] != 0) nonzero = true;
      }
      if (!nonneg || !nonzero) continue;
      VectorXq norm = simplex_normalized(v);
      rays.insert(std::vector<Rational>(norm.data(), norm.data() + norm.size()));
    }
  }

  if (rays.size() != 2) throw std::domain_error("no positive kernel point");
  std::vector<VectorXq> vertices;
  for (const auto& ray : rays) {
    VectorXq v(size);
    for (Index i = 0; i < size; ++i) v[i] = ray[i];
    vertices.push_back(v);
  }
  for (Index i = 0; i < size; ++i)
    if (vertices[0][i] + vertices[1][i] <= 0) throw std::domain_error("no positive kernel point");

  out.dim = 1;
  out.vertices = std::move(vertices);
  return out;
}

Eigen::VectorXd residual_vector(const PolySystem& sys, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd b = to_double(sys.exponents);
  const Eigen::VectorXd monomials = (b.transpose() * x.array().log().matrix()).array().exp();
  const Eigen::VectorXd scaled = to_double(sys.scale).cwiseProduct(monomials);
  return to_double(sys.coefficients) * scaled;
}

FiberSolution fiber_from_polytope_point(const MonomialStructure& ms, const PolySystem& sys,
                                        const Eigen::VectorXd& y) {
  const Index m = sys.monomial_count();
  if (y.size() != m) throw std::invalid_argument("fiber: y has wrong length");
  for (Index i = 0; i < m; ++i)
    if (!(y[i] > 0)) throw std::invalid_argument("fiber: y not strictly positive");

  // membership in P: kernel of A and per-class simplex normalization
  const Eigen::MatrixXd a = to_double(sys.coefficients);
  const double a_scale = a.cwiseAbs().maxCoeff() * y.cwiseAbs().maxCoeff();
  if ((a * y).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, a_scale))
    throw std::domain_error("y not in P");
  const std::vector<Index> offsets = sys.class_offsets();
  for (Index j = 0; j < sys.class_count(); ++j)
    if (std::abs(y.segment(offsets[j], sys.class_sizes[j]).sum() - 1.0) > 1e-9)
      throw std::domain_error("y not in P");

  const Eigen::VectorXd log_y = y.array().log();
  const Eigen::VectorXd log_c = to_double(sys.scale).array().log();

  for (Index z = 0; z < ms.dependency_basis.vectors.cols(); ++z) {
    const Eigen::VectorXd zv = to_double(VectorXq(ms.dependency_basis.vectors.col(z)));
    const double lhs = zv.dot(log_y);
    const double rhs = zv.dot(log_c);
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs)))
      throw std::domain_error("y not in Y_c");
  }

  FiberSolution out;
  out.polytope_point = y;
  const Eigen::MatrixXd e = to_double(ms.exponentiation);
  out.x_star = (e.transpose() * (log_y - log_c)).array().exp();
  out.lperp_basis = orthogonal_complement(ms.difference);

  out.residual = residual_vector(sys, out.x_star).cwiseAbs().maxCoeff();
  double c_norm = 0;
  for (Index i = 0; i < sys.scale.size(); ++i)
    c_norm = std::max(c_norm, std::abs(to_double(sys.scale[i])));
  if (out.residual > 1e-8 * c_norm)
    throw std::runtime_error("fiber reconstruction residual too large");
  return out;
}

}  // namespace crn
