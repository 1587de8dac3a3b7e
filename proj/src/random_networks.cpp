#include "crn/random_networks.hpp"

#include <algorithm>
#include <set>

namespace crn {

Digraph random_digraph(Rng& rng, Index min_vertices, Index max_vertices, bool connected,
                       double reverse_prob) {
  Digraph g;
  g.vertex_count = rng.uniform(min_vertices, max_vertices);
  std::set<std::pair<Index, Index>> used;
  auto add = [&](Index tail, Index head) {
    if (tail == head || !used.insert({tail, head}).second) return;
    g.edges.push_back({tail, head});
  };

  if (connected) {
    for (Index v = 1; v < g.vertex_count; ++v) {
      const Index other = rng.uniform(0, v - 1);
      if (rng.chance(0.5))
        add(other, v);
      else
        add(v, other);
    }
  } else {
    // every vertex touched by at least one edge
    for (Index v = 0; v < g.vertex_count; ++v) {
      Index other = rng.uniform(0, g.vertex_count - 2);
      if (other >= v) ++other;
      if (rng.chance(0.5))
        add(other, v);
      else
        add(v, other);
    }
  }

  const Index extras = rng.uniform(0, g.vertex_count);
  for (Index i = 0; i < extras; ++i) {
    const Index tail = rng.uniform(0, g.vertex_count - 1);
    const Index head = rng.uniform(0, g.vertex_count - 1);
    add(tail, head);
  }

  const auto snapshot = g.edges;
  for (const auto& [tail, head] : snapshot)
    if (rng.chance(reverse_prob)) add(head, tail);
  return g;
}

VectorXq random_rates(Rng& rng, Index count) {
  VectorXq out(count);
  for (Index e = 0; e < count; ++e) out[e] = rng.positive_rational();
  return out;
}

namespace {

MatrixXq random_complexes(Rng& rng, Index species, Index vertices) {
  MatrixXq out(species, vertices);
  std::set<std::vector<int>> seen;
  for (Index v = 0; v < vertices; ++v) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<int> column(species);
      for (Index s = 0; s < species; ++s) column[s] = static_cast<int>(rng.uniform(0, 3));
      if (!seen.insert(column).second && attempt < 63) continue;
      for (Index s = 0; s < species; ++s) out(s, v) = column[s];
      break;
    }
  }
  return out;
}

}  // namespace

MassActionSystem random_system(Rng& rng, Index max_species, Index max_vertices) {
  MassActionSystem sys;
  const Index species = rng.uniform(1, max_species);
  sys.network.graph = random_digraph(rng, 2, max_vertices, rng.chance(0.7), 0.4);
  sys.network.complexes = random_complexes(rng, species, sys.network.graph.vertex_count);
  sys.network.species.resize(species);
  for (Index s = 0; s < species; ++s) sys.network.species[s] = "X" + std::to_string(s + 1);
  sys.rates = random_rates(rng, sys.network.graph.edge_count());
  return sys;
}

MassActionSystem random_weakly_reversible_system(Rng& rng, Index max_species, Index max_vertices) {
  MassActionSystem sys = random_system(rng, max_species, max_vertices);
  std::set<std::pair<Index, Index>> used(sys.network.graph.edges.begin(),
                                         sys.network.graph.edges.end());
  const auto snapshot = sys.network.graph.edges;
  for (const auto& [tail, head] : snapshot) {
    if (used.insert({head, tail}).second) sys.network.graph.edges.push_back({head, tail});
  }
  sys.rates = random_rates(rng, sys.network.graph.edge_count());
  return sys;
}

TwoBlockSystem random_two_block_system(Rng& rng) {
  TwoBlockSystem out;
  const Index species_a = rng.uniform(1, 2), species_b = rng.uniform(1, 2);
  const Digraph graph_a = random_digraph(rng, 2, 3, true, 0.5);
  const Digraph graph_b = random_digraph(rng, 2, 3, true, 0.5);

  MassActionSystem& sys = out.system;
  const Index species = species_a + species_b;
  const Index vertices = graph_a.vertex_count + graph_b.vertex_count;
  sys.network.species.resize(species);
  for (Index s = 0; s < species; ++s) sys.network.species[s] = "X" + std::to_string(s + 1);

  sys.network.graph.vertex_count = vertices;
  sys.network.complexes = MatrixXq::Zero(species, vertices);
  auto fill_block = [&](Index species_offset, Index species_count, Index vertex_offset,
                        Index vertex_count) {
    std::set<std::vector<int>> seen;
    for (Index v = 0; v < vertex_count; ++v) {
      for (;;) {
        std::vector<int> column(species_count, 0);
        bool nonzero = false;
        for (Index s = 0; s < species_count; ++s) {
          column[s] = static_cast<int>(rng.uniform(0, 3));
          nonzero = nonzero || column[s] != 0;
        }
        if (!nonzero || !seen.insert(column).second) continue;
        for (Index s = 0; s < species_count; ++s)
          sys.network.complexes(species_offset + s, vertex_offset + v) = column[s];
        break;
      }
    }
  };
  fill_block(0, species_a, 0, graph_a.vertex_count);
  fill_block(species_a, species_b, graph_a.vertex_count, graph_b.vertex_count);

  out.blocks.resize(2);
  for (const auto& [tail, head] : graph_a.edges) {
    out.blocks[0].push_back(sys.network.graph.edge_count());
    sys.network.graph.edges.push_back({tail, head});
  }
  for (const auto& [tail, head] : graph_b.edges) {
    out.blocks[1].push_back(sys.network.graph.edge_count());
    sys.network.graph.edges.push_back({graph_a.vertex_count + tail, graph_a.vertex_count + head});
  }
  sys.rates = random_rates(rng, sys.network.graph.edge_count());
  return out;
}

}  // namespace crn
