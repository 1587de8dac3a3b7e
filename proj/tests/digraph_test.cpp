#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crn/digraph.hpp"
#include "crn/exact_linalg.hpp"
#include "crn/random_networks.hpp"
#include "support.hpp"

using namespace crn;
using crn::testing::matrix;

TEST_CASE("incidence of a single edge") {
  const Digraph g{2, {{0, 1}}};
  const IncidencePair inc = incidence_matrices(g);
  CHECK(inc.incidence == matrix({{-1}, {1}}));
  CHECK(inc.source_incidence == matrix({{1}}));
  CHECK(inc.sources == std::vector<Index>{0});
}

TEST_CASE("incidence of a reversible pair") {
  const Digraph g{2, {{0, 1}, {1, 0}}};
  const IncidencePair inc = incidence_matrices(g);
  CHECK(inc.incidence == matrix({{-1, 1}, {1, -1}}));
  CHECK(inc.source_incidence == MatrixXq::Identity(2, 2));
}

TEST_CASE("incidence columns of the intro example sum to zero") {
  const MassActionSystem sys = testing::example2();
  const IncidencePair inc = incidence_matrices(sys.network.graph);
  REQUIRE(inc.incidence.cols() == 6);
  for (Index e = 0; e < inc.incidence.cols(); ++e) {
    Rational sum = 0;
    Index minus = 0, plus = 0;
    for (Index v = 0; v < inc.incidence.rows(); ++v) {
      sum += inc.incidence(v, e);
      if (inc.incidence(v, e) == -1) ++minus;
      if (inc.incidence(v, e) == 1) ++plus;
    }
    CHECK(sum == 0);
    CHECK(minus == 1);
    CHECK(plus == 1);
  }
}

TEST_CASE("digraph validation rejects self-loops and repeats") {
  CHECK_THROWS_AS(validate(Digraph{2, {{0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Digraph{2, {{0, 1}, {0, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Digraph{2, {{0, 2}}}), std::invalid_argument);
}

TEST_CASE("intro example graph counts") {
  const GraphStats stats = graph_stats(testing::example2().network.graph);
  CHECK(stats.component_count == 1);
  CHECK(stats.terminal_count == 2);
  CHECK(stats.nonsingleton_terminal_count == 1);
  CHECK_FALSE(stats.weakly_reversible);
}

TEST_CASE("path example graph counts") {
  const GraphStats stats = graph_stats(testing::example1().network.graph);
  CHECK(stats.component_count == 1);
  CHECK(stats.terminal_count == 1);
  CHECK(stats.nonsingleton_terminal_count == 0);
}

TEST_CASE("three-cycle is weakly reversible with t' = 1") {
  const GraphStats stats = graph_stats(Digraph{3, {{0, 1}, {1, 2}, {2, 0}}});
  CHECK(stats.component_count == 1);
  CHECK(stats.terminal_count == 1);
  CHECK(stats.nonsingleton_terminal_count == 1);
  CHECK(stats.weakly_reversible);
}

TEST_CASE("auxiliary incidence of a reversible pair") {
  const Digraph g{2, {{0, 1}, {1, 0}}};
  CHECK(auxiliary_incidence(g, {0, 1}) == matrix({{-1}, {1}}));
}

TEST_CASE("auxiliary incidence spans the incidence image on cycles") {
  for (const Digraph& g : {Digraph{3, {{0, 1}, {1, 2}, {2, 0}}},
                           Digraph{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}}) {
    std::vector<Index> all(g.vertex_count);
    for (Index v = 0; v < g.vertex_count; ++v) all[v] = v;
    const MatrixXq aux = auxiliary_incidence(g, all);
    CHECK(aux.cols() == g.vertex_count - 1);
    CHECK(rank(aux) == g.vertex_count - 1);
    CHECK(image_equal(aux, incidence_matrices(g).incidence));
  }
}

TEST_CASE("auxiliary incidence rejects disconnected subsets") {
  const Digraph g{4, {{0, 1}, {2, 3}}};
  CHECK_THROWS_WITH_AS(auxiliary_incidence(g, {0, 1, 2, 3}),
                       "auxiliary graph requires connected vertex set", std::invalid_argument);
}

TEST_CASE("random graphs satisfy the kernel identities of the incidence and Laplacian") {
  Rng rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const Digraph g = random_digraph(rng, 2, 7, rng.chance(0.6), 0.5);
    const GraphStats stats = graph_stats(g);  // asserts dim ker I_E^T = l internally
    const IncidencePair inc = incidence_matrices(g);
    CHECK(rank(inc.incidence) == g.vertex_count - stats.component_count);

    const VectorXq k = random_rates(rng, g.edge_count());
    const MatrixXq laplacian = inc.incidence * k.asDiagonal() * inc.source_incidence.transpose();
    CHECK(kernel_basis(laplacian).dimension() == stats.nonsingleton_terminal_count);
    CHECK(rank(laplacian) == g.vertex_count - stats.terminal_count);

    // im(auxiliary incidence) = im(I_E) restricted to each component
    for (Index c = 0; c < stats.component_count; ++c) {
      std::vector<Index> members;
      for (Index v = 0; v < g.vertex_count; ++v)
        if (stats.component_of[v] == c) members.push_back(v);
      if (members.size() < 2) continue;
      const MatrixXq aux = auxiliary_incidence(g, members);
      MatrixXq restricted(static_cast<Index>(members.size()), g.edge_count());
      for (size_t i = 0; i < members.size(); ++i)
        restricted.row(static_cast<Index>(i)) = inc.incidence.row(members[i]);
      CHECK(image_equal(aux, restricted));
    }
  }
}
