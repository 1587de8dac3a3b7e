#include "crn/network.hpp"

#include "crn/exact_linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace crn {

std::vector<std::string> validate(const ReactionNetwork& network) {
  validate(network.graph);
  if (network.species_count() < 1) throw std::invalid_argument("network: no species");
  if (network.vertex_count() < 2) throw std::invalid_argument("network: fewer than two vertices");
  if (network.complexes.cols() != network.vertex_count())
    throw std::invalid_argument("network: complex count != vertex count");
  if (static_cast<Index>(network.species.size()) != network.species_count())
    throw std::invalid_argument("network: species name count mismatch");

  std::vector<std::string> warnings;
  for (Index v = 0; v < network.vertex_count(); ++v)
    for (Index w = v + 1; w < network.vertex_count(); ++w)
      if (network.complexes.col(v) == network.complexes.col(w))
        warnings.push_back("vertices " + std::to_string(v + 1) + " and " + std::to_string(w + 1) +
                           " carry the same complex");
  return warnings;
}

void validate(const MassActionSystem& sys) {
  validate(sys.network);
  if (sys.rates.size() != sys.network.graph.edge_count())
    throw std::invalid_argument("system: rate count != edge count");
  for (Index e = 0; e < sys.rates.size(); ++e)
    if (sys.rates[e] <= 0) throw std::invalid_argument("system: non-positive rate constant");
}

NetworkMatrices build_matrices(const MassActionSystem& sys) {
  validate(sys);
  NetworkMatrices out;
  IncidencePair inc = incidence_matrices(sys.network.graph);
  out.incidence = std::move(inc.incidence);
  out.source_incidence = std::move(inc.source_incidence);
  out.sources = std::move(inc.sources);

  out.complex_matrix = sys.network.complexes;
  out.source_complex_matrix.resize(sys.network.species_count(), static_cast<Index>(out.sources.size()));
  for (size_t j = 0; j < out.sources.size(); ++j)
    out.source_complex_matrix.col(static_cast<Index>(j)) = out.complex_matrix.col(out.sources[j]);

  out.stoichiometric = out.complex_matrix * out.incidence;
  out.laplacian = out.incidence * sys.rates.asDiagonal() * out.source_incidence.transpose();
  out.gamma = out.complex_matrix * out.laplacian;
  return out;
}

namespace {

// star differences: columns y(i) - y(root) over the given complex columns
MatrixXq star_differences(const MatrixXq& columns) {
  const Index m = columns.cols();
  if (m <= 1) return MatrixXq::Zero(columns.rows(), 0);
  MatrixXq out(columns.rows(), m - 1);
  for (Index j = 0; j + 1 < m; ++j) out.col(j) = columns.col(j) - columns.col(m - 1);
  return out;
}

}  // namespace

StructuralReport structural_report(const MassActionSystem& sys) {
  StructuralReport out;
  out.matrices = build_matrices(sys);
  out.stats = graph_stats(sys.network.graph);

  out.stoich_basis = image_basis(out.matrices.stoichiometric);
  out.kinetic_basis = image_basis(out.matrices.gamma);
  const MatrixXq diff = star_differences(out.matrices.source_complex_matrix);
  out.diff_basis = image_basis(diff);

  const Index v = sys.network.vertex_count();
  const Index vs = static_cast<Index>(out.matrices.sources.size());
  out.deficiency = v - out.stats.component_count - out.stoich_basis.cols();
  out.dependency = vs - 1 - out.diff_basis.cols();

  // d via the dependency subspace ker (Y_s over the all-ones row)
  MatrixXq stacked(out.matrices.source_complex_matrix.rows() + 1, vs);
  stacked << out.matrices.source_complex_matrix, MatrixXq::Constant(1, vs, 1);
  if (kernel_basis(stacked).dimension() != out.dependency)
    throw std::logic_error("structural_report: dependency computed two ways disagrees");

  if (out.deficiency < 0 || out.dependency < 0)
    throw std::logic_error("structural_report: negative deficiency or dependency");

  out.kinetic_equals_stoich = image_equal(out.kinetic_basis, out.stoich_basis);
  out.diff_equals_stoich = image_equal(out.diff_basis, out.stoich_basis);
  out.kinetic_equals_diff = image_equal(out.kinetic_basis, out.diff_basis);
  return out;
}

Eigen::VectorXd source_monomials(const MatrixXq& source_complex_matrix, const Eigen::VectorXd& x) {
  for (Index i = 0; i < x.size(); ++i)
    if (!(x[i] > 0)) throw std::invalid_argument("source_monomials: state not strictly positive");
  const Eigen::MatrixXd ys = to_double(source_complex_matrix);
  Eigen::VectorXd logs = ys.transpose() * x.array().log().matrix();
  return logs.array().exp();
}

Eigen::VectorXd evaluate_vector_field(const MassActionSystem& sys, const Eigen::VectorXd& x) {
  const NetworkMatrices m = build_matrices(sys);
  if (x.size() != sys.network.species_count())
    throw std::invalid_argument("evaluate_vector_field: state dimension mismatch");
  return to_double(m.gamma) * source_monomials(m.source_complex_matrix, x);
}

}  // namespace crn
