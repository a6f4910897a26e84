#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coraltda/error.hpp"

namespace coraltda {

using VertexId = std::uint64_t;

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

inline VertexSet make_vertex_set(std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

struct Edge {
  VertexId u;
  VertexId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// What the builder had to fix to make the input simple.
struct NormalizationStats {
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;  // repeated or reversed copies of an edge
};

// Undirected simple graph in compressed sparse row form.
//
// Vertices are addressed two ways: by their external id (arbitrary
// non-negative integer, never renumbered) and by their dense index in
// [0, num_vertices()). Indices follow ascending id order, so sorting by index
// is sorting by id. Neighbor lists are sorted. Immutable after construction.
class Graph {
 public:
  using Index = std::uint32_t;

  Graph() : offsets_{0} {}

  // Builds a graph from `vertices` plus every endpoint mentioned in `edges`.
  // Self-loops are dropped and repeated edges merged; counts go to `stats`.
  static Graph from_edges(std::vector<VertexId> vertices, std::span<const Edge> edges,
                          NormalizationStats* stats = nullptr) {
    for (const auto& e : edges) {
      vertices.push_back(e.u);
      vertices.push_back(e.v);
    }
    Graph g;
    g.ids_ = make_vertex_set(std::move(vertices));
    const std::size_t n = g.ids_.size();

    std::vector<std::pair<Index, Index>> arcs;
    arcs.reserve(edges.size() * 2);
    NormalizationStats local;
    for (const auto& e : edges) {
      if (e.u == e.v) {
        ++local.self_loops;
        continue;
      }
      const Index a = g.locate(e.u);
      const Index b = g.locate(e.v);
      arcs.emplace_back(a, b);
      arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    const std::size_t before = arcs.size();
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    local.duplicate_edges = (before - arcs.size()) / 2;

    g.offsets_.assign(n + 1, 0);
    for (const auto& [a, b] : arcs) ++g.offsets_[a + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.reserve(arcs.size());
    for (const auto& arc : arcs) g.targets_.push_back(arc.second);

    if (stats) *stats = local;
    return g;
  }

  // Builds directly from index-space adjacency that is already simple,
  // symmetric and sorted. Used by subgraph/power constructions.
  static Graph from_sorted_adjacency(std::vector<VertexId> ids,
                                     const std::vector<std::vector<Index>>& adjacency) {
    Graph g;
    g.ids_ = std::move(ids);
    g.offsets_.assign(g.ids_.size() + 1, 0);
    for (std::size_t i = 0; i < adjacency.size(); ++i)
      g.offsets_[i + 1] = g.offsets_[i] + adjacency[i].size();
    g.targets_.reserve(g.offsets_.back());
    for (const auto& list : adjacency) g.targets_.insert(g.targets_.end(), list.begin(), list.end());
    return g;
  }

  std::size_t num_vertices() const noexcept { return ids_.size(); }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const VertexId> vertex_ids() const noexcept { return ids_; }
  VertexId id_at(std::size_t index) const { return ids_[index]; }

  std::optional<Index> find_index(VertexId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<Index>(it - ids_.begin());
  }

  bool contains(VertexId id) const { return find_index(id).has_value(); }

  Index index_of(VertexId id) const {
    if (auto idx = find_index(id)) return *idx;
    throw InvalidInput("unknown vertex id " + std::to_string(id));
  }

  std::span<const Index> adjacent(std::size_t index) const {
    return {targets_.data() + offsets_[index], targets_.data() + offsets_[index + 1]};
  }

  std::size_t degree_at(std::size_t index) const { return offsets_[index + 1] - offsets_[index]; }

  std::vector<VertexId> neighbors(VertexId id) const {
    std::vector<VertexId> out;
    for (Index j : adjacent(index_of(id))) out.push_back(ids_[j]);
    return out;
  }

  bool has_edge_at(std::size_t a, std::size_t b) const {
    auto adj = adjacent(a);
    return std::binary_search(adj.begin(), adj.end(), static_cast<Index>(b));
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto a = find_index(u);
    auto b = find_index(v);
    return a && b && has_edge_at(*a, *b);
  }

  // Edges as (smaller id, larger id), ascending.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (std::size_t a = 0; a < num_vertices(); ++a)
      for (Index b : adjacent(a))
        if (b > a) out.push_back({ids_[a], ids_[b]});
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Index locate(VertexId id) const {
    return static_cast<Index>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
  }

  std::vector<VertexId> ids_;
  std::vector<std::size_t> offsets_;
  std::vector<Index> targets_;
};

inline std::size_t degree(const Graph& g, VertexId v) { return g.degree_at(g.index_of(v)); }

// N(v): v together with everything adjacent to it.
inline VertexSet closed_neighborhood(const Graph& g, VertexId v) {
  auto out = g.neighbors(v);
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<std::int64_t> remap(g.num_vertices(), -1);
  std::vector<VertexId> ids;
  ids.reserve(s.size());
  for (VertexId id : s) {
    const auto idx = g.index_of(id);
    if (remap[idx] >= 0) continue;
    remap[idx] = 0;
  }
  // Assign new indices in ascending id order so the index/id correspondence holds.
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    if (remap[i] < 0) continue;
    remap[i] = static_cast<std::int64_t>(ids.size());
    ids.push_back(g.id_at(i));
  }
  std::vector<std::vector<Graph::Index>> adj(ids.size());
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    if (remap[i] < 0) continue;
    auto& list = adj[static_cast<std::size_t>(remap[i])];
    for (auto j : g.adjacent(i))
      if (remap[j] >= 0) list.push_back(static_cast<Graph::Index>(remap[j]));
  }
  return Graph::from_sorted_adjacency(std::move(ids), adj);
}

// Selects vertices by index mask (`keep[i]` for vertex index i).
inline Graph induced_subgraph_mask(const Graph& g, const std::vector<bool>& keep) {
  VertexSet s;
  for (std::size_t i = 0; i < g.num_vertices(); ++i)
    if (keep[i]) s.push_back(g.id_at(i));
  return induced_subgraph(g, s);
}

inline Graph remove_vertex(const Graph& g, VertexId v) {
  std::vector<bool> keep(g.num_vertices(), true);
  keep[g.index_of(v)] = false;
  return induced_subgraph_mask(g, keep);
}

// Cells are sorted by their smallest id; each cell is sorted.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> seen(n, false);
  std::vector<VertexSet> cells;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet cell;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      auto a = stack.back();
      stack.pop_back();
      cell.push_back(g.id_at(a));
      for (auto b : g.adjacent(a)) {
        if (!seen[b]) {
          seen[b] = true;
          stack.push_back(b);
        }
      }
    }
    std::sort(cell.begin(), cell.end());
    cells.push_back(std::move(cell));
  }
  return cells;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

// Breadth-first distances from `source` (an index), stopping at `limit` hops.
// Returns (index, distance) pairs for every reached vertex except the source,
// sorted by index.
inline std::vector<std::pair<Graph::Index, std::size_t>> bounded_distances(const Graph& g,
                                                                          std::size_t source,
                                                                          std::size_t limit,
                                                                          std::vector<std::size_t>& scratch) {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  scratch.assign(g.num_vertices(), unseen);
  std::vector<std::pair<Graph::Index, std::size_t>> reached;
  std::deque<std::size_t> queue{source};
  scratch[source] = 0;
  while (!queue.empty()) {
    auto a = queue.front();
    queue.pop_front();
    if (scratch[a] == limit) continue;
    for (auto b : g.adjacent(a)) {
      if (scratch[b] != unseen) continue;
      scratch[b] = scratch[a] + 1;
      reached.emplace_back(b, scratch[b]);
      queue.push_back(b);
    }
  }
  std::sort(reached.begin(), reached.end());
  return reached;
}

// Largest finite eccentricity over all vertices (0 for edgeless graphs).
inline std::size_t diameter(const Graph& g) {
  std::vector<std::size_t> scratch;
  std::size_t best = 0;
  for (std::size_t a = 0; a < g.num_vertices(); ++a)
    for (const auto& [b, d] : bounded_distances(g, a, g.num_vertices(), scratch)) best = std::max(best, d);
  return best;
}

// G^n: same vertices, u~v iff 1 <= d(u,v) <= n. Unreachable pairs stay apart.
inline Graph graph_power(const Graph& g, std::size_t n) {
  if (n < 1) throw InvalidInput("graph_power requires n >= 1");
  std::vector<std::vector<Graph::Index>> adj(g.num_vertices());
  std::vector<std::size_t> scratch;
  for (std::size_t a = 0; a < g.num_vertices(); ++a)
    for (const auto& [b, d] : bounded_distances(g, a, n, scratch)) adj[a].push_back(b);
  return Graph::from_sorted_adjacency(std::vector<VertexId>(g.vertex_ids().begin(), g.vertex_ids().end()), adj);
}

// Mean of local clustering coefficients; degree < 2 contributes 0.
inline double clustering_coefficient(const Graph& g) {
  if (g.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t a = 0; a < g.num_vertices(); ++a) {
    const auto adj = g.adjacent(a);
    const std::size_t d = adj.size();
    if (d < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (g.has_edge_at(adj[i], adj[j])) ++links;
    total += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return total / static_cast<double>(g.num_vertices());
}

}  // namespace coraltda
