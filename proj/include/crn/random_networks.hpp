#pragma once

#include "crn/network.hpp"

#include <random>
#include <vector>

namespace crn {

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(uint64_t seed) : engine(seed) {}

  Index uniform(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(engine);
  }
  double uniform_real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(engine) < p; }
  Rational positive_rational(Index max_num = 9, Index max_den = 9) {
    return Rational(Integer(uniform(1, max_num)), Integer(uniform(1, max_den)));
  }
};

/// Random simple digraph; when `connected`, the underlying undirected graph is
/// connected (random spanning tree plus extras). `reverse_prob` adds reverse
/// edges, which makes two-cycles and terminal strong components common.
Digraph random_digraph(Rng& rng, Index min_vertices, Index max_vertices, bool connected,
                       double reverse_prob);

VectorXq random_rates(Rng& rng, Index count);

/// Random mass-action system with small integer complexes (distinct columns).
MassActionSystem random_system(Rng& rng, Index max_species, Index max_vertices);

/// Every edge made reversible, so each component is strongly connected.
MassActionSystem random_weakly_reversible_system(Rng& rng, Index max_species, Index max_vertices);

struct TwoBlockSystem {
  MassActionSystem system;
  std::vector<std::vector<Index>> blocks;  // the two edge sets
};

/// Two connected subnetworks on disjoint species sets joined into one system.
TwoBlockSystem random_two_block_system(Rng& rng);

}  // namespace crn
