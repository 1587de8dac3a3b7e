#pragma once

#include "crn/rational.hpp"

#include <utility>
#include <vector>

namespace crn {

/// Simple directed graph; tails of the edge list define the source-vertex set.
struct Digraph {
  Index vertex_count = 0;
  std::vector<std::pair<Index, Index>> edges;  // (tail, head)

  Index edge_count() const { return static_cast<Index>(edges.size()); }
};

/// Throws std::invalid_argument on self-loops, repeated edges, or bad indices.
void validate(const Digraph& g);

/// Vertices with at least one outgoing edge, ascending.
std::vector<Index> source_vertices(const Digraph& g);

struct IncidencePair {
  MatrixXq incidence;         // V x E, column (i -> i'): -1 at i, +1 at i'
  MatrixXq source_incidence;  // V_s x E, 1 where the row vertex is the tail
  std::vector<Index> sources;
};

IncidencePair incidence_matrices(const Digraph& g);

struct GraphStats {
  Index component_count = 0;              // l
  Index terminal_count = 0;               // t
  Index nonsingleton_terminal_count = 0;  // t': terminal components that are
                                          // not non-source singletons
  std::vector<std::vector<Index>> sccs;   // partition of the vertex set
  std::vector<Index> terminal_sccs;       // indices into sccs
  std::vector<Index> component_of;        // per vertex
  bool weakly_reversible = false;
};

GraphStats graph_stats(const Digraph& g);

/// Incidence matrix of a deterministic spanning tree (BFS from the
/// lowest-index vertex) over the given vertex subset, rows indexed by the
/// subset in the given order. The subset must be connected in the underlying
/// undirected graph restricted to it.
MatrixXq auxiliary_incidence(const Digraph& g, const std::vector<Index>& subset);

}  // namespace crn
