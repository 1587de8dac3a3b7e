#include "crn/salt.hpp"

#include "crn/exact_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crn {

SaltCertificate salt_certificate(const Digraph& g, const VectorXq& rates,
                                 const std::vector<Index>& terminal) {
  validate(g);
  if (rates.size() != g.edge_count())
    throw std::invalid_argument("salt certificate: rate count != edge count");
  for (Index e = 0; e < rates.size(); ++e)
    if (rates[e] <= 0) throw std::invalid_argument("salt certificate: non-positive rate");

  const GraphStats stats = graph_stats(g);
  if (stats.component_count != 1)
    throw std::invalid_argument("salt certificate requires one component");

  const std::set<Index> t_set(terminal.begin(), terminal.end());
  Index scc_index = -1;
  for (size_t s = 0; s < stats.sccs.size(); ++s)
    if (std::set<Index>(stats.sccs[s].begin(), stats.sccs[s].end()) == t_set)
      scc_index = static_cast<Index>(s);
  if (scc_index < 0 ||
      std::find(stats.terminal_sccs.begin(), stats.terminal_sccs.end(), scc_index) ==
          stats.terminal_sccs.end())
    throw std::invalid_argument("salt certificate: T is not a terminal strong component");
  if (t_set.size() < 2)
    throw std::invalid_argument("salt certificate: terminal component must not be a singleton");

  SaltCertificate out;
  const IncidencePair inc = incidence_matrices(g);
  out.sources = inc.sources;
  const MatrixXq laplacian =
      inc.incidence * rates.asDiagonal() * inc.source_incidence.transpose();

  std::vector<Index> t_columns;
  for (size_t i = 0; i < out.sources.size(); ++i)
    if (t_set.count(out.sources[i])) t_columns.push_back(static_cast<Index>(i));
  if (t_columns.size() != t_set.size())
    throw std::logic_error("salt certificate: terminal component contains a non-source vertex");

  MatrixXq restricted(laplacian.rows(), static_cast<Index>(t_columns.size()));
  for (size_t i = 0; i < t_columns.size(); ++i) restricted.col(static_cast<Index>(i)) = laplacian.col(t_columns[i]);
  const KernelBasis kernel = kernel_basis(restricted);
  if (kernel.dimension() != 1)
    throw std::logic_error("salt certificate: kernel on the terminal component is not one-dimensional");

  VectorXq generator = kernel.vectors.col(0);
  bool positive = true, negative = true;
  for (Index i = 0; i < generator.size(); ++i) {
    positive = positive && generator[i] > 0;
    negative = negative && generator[i] < 0;
  }
  if (negative) generator = -generator;
  if (!positive && !negative)
    throw std::logic_error("salt certificate: kernel vector not strictly positive on T");
  Rational max_entry = generator[0];
  for (Index i = 1; i < generator.size(); ++i) max_entry = std::max(max_entry, generator[i]);
  generator /= max_entry;

  out.q_hat = VectorXq::Zero(static_cast<Index>(out.sources.size()));
  for (size_t i = 0; i < t_columns.size(); ++i) out.q_hat[t_columns[i]] = generator[static_cast<Index>(i)];
  if ((laplacian * out.q_hat).cwiseAbs().maxCoeff() != 0)
    throw std::logic_error("salt certificate: R_k q_hat != 0");

  out.beta = laplacian * VectorXq::Constant(out.q_hat.size(), 1);

  // q-hat value per vertex (zero off the source set), used for the ordering
  std::vector<Rational> value(g.vertex_count, Rational(0));
  for (size_t i = 0; i < out.sources.size(); ++i) value[out.sources[i]] = out.q_hat[static_cast<Index>(i)];

  out.ordering.resize(g.vertex_count);
  std::iota(out.ordering.begin(), out.ordering.end(), 0);
  std::stable_sort(out.ordering.begin(), out.ordering.end(),
                   [&](Index a, Index b) { return value[a] > value[b]; });

  out.terminal_size = static_cast<Index>(t_set.size());
  for (Index i = 0; i < out.terminal_size; ++i)
    if (!t_set.count(out.ordering[i]))
      throw std::logic_error("salt certificate: T does not lead the ordering");

  out.partial_sums.resize(out.terminal_size);
  Rational prefix = 0;
  for (Index i = 0; i < out.terminal_size; ++i) {
    prefix += out.beta[out.ordering[i]];
    out.partial_sums[i] = prefix;
    if (prefix < 0) throw std::logic_error("salt certificate: negative prefix sum on T");
  }
  for (Index i = 0; i + 1 < out.terminal_size; ++i) {
    if (value[out.ordering[i]] > value[out.ordering[i + 1]]) {
      out.strict_positions.push_back(i);
      if (out.partial_sums[i] <= 0)
        throw std::logic_error("salt certificate: prefix sum not strict at a strict descent");
    }
  }

  out.covers_all_vertices = out.terminal_size == g.vertex_count;
  if ((out.partial_sums[out.terminal_size - 1] == 0) != out.covers_all_vertices)
    throw std::logic_error("salt certificate: total over T inconsistent with T = V");
  return out;
}

}  // namespace crn
