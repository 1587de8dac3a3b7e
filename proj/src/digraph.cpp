#include "crn/digraph.hpp"

#include "crn/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace crn {

void validate(const Digraph& g) {
  std::set<std::pair<Index, Index>> seen;
  for (const auto& [tail, head] : g.edges) {
    if (tail < 0 || tail >= g.vertex_count || head < 0 || head >= g.vertex_count)
      throw std::invalid_argument("digraph: edge endpoint out of range");
    if (tail == head) throw std::invalid_argument("digraph: self-loop");
    if (!seen.insert({tail, head}).second)
      throw std::invalid_argument("digraph: repeated directed edge");
  }
}

std::vector<Index> source_vertices(const Digraph& g) {
  std::vector<bool> is_source(g.vertex_count, false);
  for (const auto& [tail, head] : g.edges) is_source[tail] = true;
  std::vector<Index> out;
  for (Index v = 0; v < g.vertex_count; ++v)
    if (is_source[v]) out.push_back(v);
  return out;
}

IncidencePair incidence_matrices(const Digraph& g) {
  validate(g);
  IncidencePair out;
  out.sources = source_vertices(g);
  out.incidence = MatrixXq::Zero(g.vertex_count, g.edge_count());
  out.source_incidence = MatrixXq::Zero(static_cast<Index>(out.sources.size()), g.edge_count());
  std::map<Index, Index> source_row;
  for (size_t i = 0; i < out.sources.size(); ++i) source_row[out.sources[i]] = static_cast<Index>(i);
  for (Index e = 0; e < g.edge_count(); ++e) {
    const auto& [tail, head] = g.edges[e];
    out.incidence(tail, e) = -1;
    out.incidence(head, e) = 1;
    out.source_incidence(source_row.at(tail), e) = 1;
  }
  return out;
}

namespace {

// iterative Tarjan
std::vector<Index> strong_components(const Digraph& g, Index& scc_count) {
  const Index n = g.vertex_count;
  std::vector<std::vector<Index>> adj(n);
  for (const auto& [tail, head] : g.edges) adj[tail].push_back(head);

  std::vector<Index> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  Index next_index = 0;
  scc_count = 0;

  struct Frame {
    Index v;
    size_t child;
  };
  for (Index start = 0; start < n; ++start) {
    if (index[start] >= 0) continue;
    std::vector<Frame> call;
    call.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        Index w = adj[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          for (;;) {
            Index w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = scc_count;
            if (w == f.v) break;
          }
          ++scc_count;
        }
        Index v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

GraphStats graph_stats(const Digraph& g) {
  validate(g);
  GraphStats out;
  const Index n = g.vertex_count;

  // weak components via union-find
  std::vector<Index> parent(n);
  for (Index v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [tail, head] : g.edges) parent[find(tail)] = find(head);
  std::map<Index, Index> comp_id;
  out.component_of.resize(n);
  for (Index v = 0; v < n; ++v) {
    Index root = find(v);
    auto [it, inserted] = comp_id.insert({root, static_cast<Index>(comp_id.size())});
    out.component_of[v] = it->second;
  }
  out.component_count = static_cast<Index>(comp_id.size());

  Index scc_count = 0;
  std::vector<Index> scc_of = strong_components(g, scc_count);

  // order SCCs by their smallest vertex
  std::vector<std::vector<Index>> groups(scc_count);
  for (Index v = 0; v < n; ++v) groups[scc_of[v]].push_back(v);
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::vector<Index> renumber(scc_count);
  for (size_t i = 0; i < groups.size(); ++i) {
    std::sort(groups[i].begin(), groups[i].end());
    for (Index v : groups[i]) renumber[scc_of[v]] = static_cast<Index>(i);
  }
  for (Index v = 0; v < n; ++v) scc_of[v] = renumber[scc_of[v]];
  out.sccs = std::move(groups);

  std::vector<bool> has_exit(scc_count, false);
  std::vector<bool> has_out_edge(n, false);
  for (const auto& [tail, head] : g.edges) {
    has_out_edge[tail] = true;
    if (scc_of[tail] != scc_of[head]) has_exit[scc_of[tail]] = true;
  }
  for (Index s = 0; s < scc_count; ++s) {
    if (has_exit[s]) continue;
    out.terminal_sccs.push_back(s);
    const auto& members = out.sccs[s];
    const bool nonsource_singleton = members.size() == 1 && !has_out_edge[members.front()];
    if (!nonsource_singleton) ++out.nonsingleton_terminal_count;
  }
  out.terminal_count = static_cast<Index>(out.terminal_sccs.size());
  out.weakly_reversible = scc_count == out.component_count;

  // dim ker I_E^T = l
  if (g.edge_count() > 0) {
    const MatrixXq inc = incidence_matrices(g).incidence;
    if (kernel_basis(MatrixXq(inc.transpose())).dimension() != out.component_count)
      throw std::logic_error("graph_stats: dim ker I_E^T != component count");
  }
  return out;
}

MatrixXq auxiliary_incidence(const Digraph& g, const std::vector<Index>& subset) {
  validate(g);
  std::map<Index, Index> local;
  for (size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<Index>(i);
  const Index n = static_cast<Index>(subset.size());
  if (n == 0) throw std::invalid_argument("auxiliary graph requires a nonempty vertex set");

  std::vector<std::vector<Index>> adj(n);
  for (const auto& [tail, head] : g.edges) {
    auto it = local.find(tail);
    auto jt = local.find(head);
    if (it == local.end() || jt == local.end()) continue;
    adj[it->second].push_back(jt->second);
    adj[jt->second].push_back(it->second);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  Index root = 0;
  for (Index i = 1; i < n; ++i)
    if (subset[i] < subset[root]) root = i;

  std::vector<std::pair<Index, Index>> tree;
  std::vector<bool> visited(n, false);
  std::queue<Index> frontier;
  visited[root] = true;
  frontier.push(root);
  while (!frontier.empty()) {
    Index v = frontier.front();
    frontier.pop();
    for (Index w : adj[v]) {
      if (visited[w]) continue;
      visited[w] = true;
      tree.push_back({v, w});
      frontier.push(w);
    }
  }
  if (static_cast<Index>(tree.size()) != n - 1)
    throw std::invalid_argument("auxiliary graph requires connected vertex set");

  MatrixXq out = MatrixXq::Zero(n, n - 1);
  for (size_t e = 0; e < tree.size(); ++e) {
    out(tree[e].first, static_cast<Index>(e)) = -1;
    out(tree[e].second, static_cast<Index>(e)) = 1;
  }
  return out;
}

}  // namespace crn
