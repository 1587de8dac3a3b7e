#include "crn/decomposition.hpp"

#include "crn/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crn {

std::vector<Index> Subnetwork::global_sources() const {
  std::vector<Index> out;
  out.reserve(matrices.sources.size());
  for (Index local : matrices.sources) out.push_back(vertex_ids[local]);
  return out;
}

std::vector<Index> Decomposition::class_sizes() const {
  std::vector<Index> out;
  out.reserve(subnetworks.size());
  for (const auto& sub : subnetworks)
    out.push_back(static_cast<Index>(sub.matrices.sources.size()));
  return out;
}

namespace {

MatrixXq star_differences(const MatrixXq& columns) {
  const Index m = columns.cols();
  if (m <= 1) return MatrixXq::Zero(columns.rows(), 0);
  MatrixXq out(columns.rows(), m - 1);
  for (Index j = 0; j + 1 < m; ++j) out.col(j) = columns.col(j) - columns.col(m - 1);
  return out;
}

Subnetwork build_subnetwork(const MassActionSystem& sys, std::vector<Index> edge_ids) {
  Subnetwork sub;
  std::sort(edge_ids.begin(), edge_ids.end());
  sub.edge_ids = std::move(edge_ids);

  std::set<Index> vertex_set;
  for (Index e : sub.edge_ids) {
    vertex_set.insert(sys.network.graph.edges[e].first);
    vertex_set.insert(sys.network.graph.edges[e].second);
  }
  sub.vertex_ids.assign(vertex_set.begin(), vertex_set.end());
  std::map<Index, Index> local;
  for (size_t i = 0; i < sub.vertex_ids.size(); ++i) local[sub.vertex_ids[i]] = static_cast<Index>(i);

  sub.graph.vertex_count = static_cast<Index>(sub.vertex_ids.size());
  sub.rates.resize(static_cast<Index>(sub.edge_ids.size()));
  for (size_t i = 0; i < sub.edge_ids.size(); ++i) {
    const auto& [tail, head] = sys.network.graph.edges[sub.edge_ids[i]];
    sub.graph.edges.push_back({local.at(tail), local.at(head)});
    sub.rates[static_cast<Index>(i)] = sys.rates[sub.edge_ids[i]];
  }

  MatrixXq complexes(sys.network.species_count(), sub.graph.vertex_count);
  for (Index v = 0; v < sub.graph.vertex_count; ++v)
    complexes.col(v) = sys.network.complexes.col(sub.vertex_ids[v]);

  MassActionSystem local_sys{{sys.network.species, sub.graph, complexes}, sub.rates};
  sub.matrices = build_matrices(local_sys);
  sub.stats = graph_stats(sub.graph);
  sub.connected = sub.stats.component_count == 1;

  sub.stoich_basis = image_basis(sub.matrices.stoichiometric);
  sub.kinetic_basis = image_basis(sub.matrices.gamma);
  sub.diff_basis = image_basis(star_differences(sub.matrices.source_complex_matrix));
  sub.deficiency = sub.graph.vertex_count - sub.stats.component_count - sub.stoich_basis.cols();
  sub.dependency = static_cast<Index>(sub.matrices.sources.size()) - 1 - sub.diff_basis.cols();

  // t = t' + |V_ns| on every subgraph
  const Index non_sources =
      sub.graph.vertex_count - static_cast<Index>(sub.matrices.sources.size());
  if (sub.stats.terminal_count != sub.stats.nonsingleton_terminal_count + non_sources)
    throw std::logic_error("subnetwork: t != t' + |V_ns|");
  return sub;
}

CombinedMatrices build_combined(const MassActionSystem& sys, const std::vector<Subnetwork>& subs) {
  CombinedMatrices out;
  const Index n = sys.network.species_count();
  const Index edge_total = sys.network.graph.edge_count();

  Index union_vertices = 0, union_sources = 0;
  for (const auto& sub : subs) {
    union_vertices += sub.graph.vertex_count;
    union_sources += static_cast<Index>(sub.matrices.sources.size());
  }

  out.incidence = MatrixXq::Zero(union_vertices, edge_total);
  out.source_incidence = MatrixXq::Zero(union_sources, edge_total);
  out.complex_matrix.resize(n, union_vertices);
  out.source_complex_matrix.resize(n, union_sources);

  const std::vector<Index> parent_sources = source_vertices(sys.network.graph);
  std::map<Index, Index> parent_source_row;
  for (size_t i = 0; i < parent_sources.size(); ++i)
    parent_source_row[parent_sources[i]] = static_cast<Index>(i);
  out.source_map = MatrixXq::Zero(static_cast<Index>(parent_sources.size()), union_sources);

  Index vertex_offset = 0, source_offset = 0;
  for (const auto& sub : subs) {
    out.incidence.block(vertex_offset, 0, sub.graph.vertex_count, edge_total).setZero();
    for (size_t i = 0; i < sub.edge_ids.size(); ++i) {
      const Index e = sub.edge_ids[i];
      const auto& [tail, head] = sub.graph.edges[i];
      out.incidence(vertex_offset + tail, e) = -1;
      out.incidence(vertex_offset + head, e) = 1;
      const Index tail_source =
          static_cast<Index>(std::lower_bound(sub.matrices.sources.begin(),
                                              sub.matrices.sources.end(), tail) -
                             sub.matrices.sources.begin());
      out.source_incidence(source_offset + tail_source, e) = 1;
    }
    out.complex_matrix.middleCols(vertex_offset, sub.graph.vertex_count) = sub.matrices.complex_matrix;
    out.source_complex_matrix.middleCols(source_offset, static_cast<Index>(sub.matrices.sources.size())) =
        sub.matrices.source_complex_matrix;
    for (size_t i = 0; i < sub.matrices.sources.size(); ++i) {
      const Index global = sub.vertex_ids[sub.matrices.sources[i]];
      out.source_map(parent_source_row.at(global), source_offset + static_cast<Index>(i)) = 1;
    }
    vertex_offset += sub.graph.vertex_count;
    source_offset += static_cast<Index>(sub.matrices.sources.size());
  }

  out.laplacian = out.incidence * sys.rates.asDiagonal() * out.source_incidence.transpose();
  out.gamma = out.complex_matrix * out.laplacian;

  const NetworkMatrices plain = build_matrices(sys);
  if (out.complex_matrix * out.incidence != plain.stoichiometric)
    throw std::logic_error("combined matrices: Y* I*_E != Y I_E");
  if (out.source_complex_matrix != plain.source_complex_matrix * out.source_map)
    throw std::logic_error("combined matrices: Y*_s != Y_s I*_{V,s}");
  return out;
}

}  // namespace

Decomposition decomposition_from_partition(const MassActionSystem& sys,
                                           const std::vector<std::vector<Index>>& partition) {
  validate(sys);
  std::vector<bool> seen(sys.network.graph.edge_count(), false);
  Index covered = 0;
  for (const auto& part : partition)
    for (Index e : part) {
      if (e < 0 || e >= sys.network.graph.edge_count())
        throw std::invalid_argument("decomposition: edge index out of range");
      if (seen[e]) throw std::invalid_argument("decomposition: edge in two classes");
      seen[e] = true;
      ++covered;
    }
  if (covered != sys.network.graph.edge_count())
    throw std::invalid_argument("decomposition: partition does not cover the edge set");

  Decomposition dec;
  dec.edge_partition = partition;
  for (auto& part : dec.edge_partition) std::sort(part.begin(), part.end());
  std::sort(dec.edge_partition.begin(), dec.edge_partition.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  for (const auto& part : dec.edge_partition)
    dec.subnetworks.push_back(build_subnetwork(sys, part));

  dec.connected_ok = true;
  for (const auto& sub : dec.subnetworks) dec.connected_ok = dec.connected_ok && sub.connected;

  const NetworkMatrices plain = build_matrices(sys);
  Index kernel_sum = 0;
  for (const auto& sub : dec.subnetworks)
    kernel_sum += kernel_basis(sub.matrices.stoichiometric).dimension();
  dec.independent_ok = kernel_sum == kernel_basis(plain.stoichiometric).dimension();

  dec.combined = build_combined(sys, dec.subnetworks);
  return dec;
}

Decomposition finest_independent_decomposition(const MassActionSystem& sys) {
  validate(sys);
  const NetworkMatrices plain = build_matrices(sys);
  const KernelBasis kernel = kernel_basis(plain.stoichiometric);
  const Index edge_total = sys.network.graph.edge_count();

  std::vector<Index> parent(edge_total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index e) {
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  };
  for (Index c = 0; c < kernel.vectors.cols(); ++c) {
    Index first = -1;
    for (Index e = 0; e < edge_total; ++e) {
      if (kernel.vectors(e, c) == 0) continue;
      if (first < 0)
        first = e;
      else
        parent[find(first)] = find(e);
    }
  }

  std::map<Index, std::vector<Index>> groups;
  for (Index e = 0; e < edge_total; ++e) groups[find(e)].push_back(e);
  std::vector<std::vector<Index>> partition;
  for (auto& [root, edges] : groups) partition.push_back(std::move(edges));

  Decomposition dec = decomposition_from_partition(sys, partition);
  if (!dec.independent_ok)
    throw std::logic_error("finest decomposition: direct-product certificate failed");
  return dec;
}

MatrixXq system_diff_basis(const Decomposition& dec) {
  Index total = 0, rows = 0;
  for (const auto& sub : dec.subnetworks) {
    total += sub.diff_basis.cols();
    rows = sub.diff_basis.rows();
  }
  MatrixXq joined(rows, total);
  Index offset = 0;
  for (const auto& sub : dec.subnetworks) {
    joined.middleCols(offset, sub.diff_basis.cols()) = sub.diff_basis;
    offset += sub.diff_basis.cols();
  }
  return image_basis(joined);
}

Index system_dependency(const Decomposition& dec) {
  Index union_sources = 0;
  for (const auto& sub : dec.subnetworks)
    union_sources += static_cast<Index>(sub.matrices.sources.size());
  return union_sources - dec.class_count() - system_diff_basis(dec).cols();
}

DecompositionChecks decomposition_checks(const MassActionSystem& sys, const Decomposition& dec) {
  DecompositionChecks out;
  if (!dec.connected_ok) {
    out.reason = "not applicable: subnetworks not connected";
    return out;
  }
  if (!dec.independent_ok) {
    out.reason = "not applicable: subnetworks not independent";
    return out;
  }
  out.applicable = true;

  const StructuralReport report = structural_report(sys);

  Index dependency_sum = 0, deficiency_sum = 0, union_vertices = 0, diff_dim_sum = 0;
  for (const auto& sub : dec.subnetworks) {
    dependency_sum += sub.dependency;
    deficiency_sum += sub.deficiency;
    union_vertices += sub.graph.vertex_count;
    diff_dim_sum += sub.diff_basis.cols();
  }

  out.dependency_additive = system_dependency(dec) == dependency_sum;
  out.deficiency_additive = report.deficiency == deficiency_sum;
  out.vertex_count_identity =
      union_vertices - sys.network.vertex_count() ==
      dec.class_count() - report.stats.component_count;

  const KernelBasis plain_kernel = kernel_basis(report.matrices.incidence);
  const KernelBasis combined_kernel = kernel_basis(dec.combined.incidence);
  bool contained = true;
  if (combined_kernel.dimension() > 0)
    contained = (report.matrices.incidence * combined_kernel.vectors).isZero(0);
  out.incidence_kernel_identity =
      contained && plain_kernel.dimension() == combined_kernel.dimension();

  out.diff_direct_sum = system_diff_basis(dec).cols() == diff_dim_sum;

  MatrixXq kinetic_joined(report.kinetic_basis.rows(), 0);
  for (const auto& sub : dec.subnetworks) {
    MatrixXq next(kinetic_joined.rows(), kinetic_joined.cols() + sub.kinetic_basis.cols());
    next << kinetic_joined, sub.kinetic_basis;
    kinetic_joined = std::move(next);
  }
  out.kinetic_sum_contained = image_contained(report.kinetic_basis, kinetic_joined);

  const KernelBasis gamma_kernel = kernel_basis(dec.combined.gamma);
  Index gamma_kernel_sum = 0;
  for (const auto& sub : dec.subnetworks)
    gamma_kernel_sum += kernel_basis(sub.matrices.gamma).dimension();
  bool block_supported = true;
  const std::vector<Index> sizes = dec.class_sizes();
  for (Index c = 0; c < gamma_kernel.vectors.cols() && block_supported; ++c) {
    Index support_class = -1;
    Index offset = 0;
    for (size_t j = 0; j < sizes.size(); ++j) {
      for (Index i = 0; i < sizes[j]; ++i) {
        if (gamma_kernel.vectors(offset + i, c) == 0) continue;
        if (support_class < 0)
          support_class = static_cast<Index>(j);
        else if (support_class != static_cast<Index>(j))
          block_supported = false;
      }
      offset += sizes[j];
    }
  }
  out.gamma_kernel_product =
      block_supported && gamma_kernel.dimension() == gamma_kernel_sum;
  return out;
}

}  // namespace crn
