#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "coraltda/filter.hpp"
#include "coraltda/graph.hpp"

namespace coraltda {

// Per-vertex core index, aligned with the graph's vertex indices.
struct CoreMap {
  std::vector<VertexId> ids;
  std::vector<std::size_t> coreness;
  // Vertex indices in the order the peeler removed them (a degeneracy order).
  std::vector<Graph::Index> peel_order;

  std::size_t at(VertexId v) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), v);
    if (it == ids.end() || *it != v) throw InvalidInput("unknown vertex id " + std::to_string(v));
    return coreness[static_cast<std::size_t>(it - ids.begin())];
  }

  // Largest k with a non-empty k-core.
  std::size_t degeneracy() const {
    return coreness.empty() ? 0 : *std::max_element(coreness.begin(), coreness.end());
  }
};

// Batagelj-Zaversnik bucket peeling, O(|V| + |E|).
inline CoreMap core_numbers(const Graph& g) {
  const std::size_t n = g.num_vertices();
  CoreMap out;
  out.ids.assign(g.vertex_ids().begin(), g.vertex_ids().end());
  out.coreness.assign(n, 0);
  if (n == 0) return out;

  std::vector<std::size_t> deg(n), pos(n);
  std::vector<Graph::Index> vert(n);
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = g.degree_at(v);
    max_deg = std::max(max_deg, deg[v]);
  }

  // bin[d] = start of the block of vertices with current degree d inside vert.
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_deg; ++d) {
    const std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  for (std::size_t v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]];
    vert[pos[v]] = static_cast<Graph::Index>(v);
    ++bin[deg[v]];
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = vert[i];
    for (auto u : g.adjacent(v)) {
      if (deg[u] <= deg[v]) continue;
      // Move u to the front of its bin, then shrink the bin by one.
      const std::size_t du = deg[u];
      const std::size_t pu = pos[u];
      const std::size_t pw = bin[du];
      const auto w = vert[pw];
      if (u != w) {
        pos[u] = pw;
        vert[pu] = w;
        pos[w] = pu;
        vert[pw] = u;
      }
      ++bin[du];
      --deg[u];
    }
  }
  out.coreness = std::move(deg);
  out.peel_order = std::move(vert);
  return out;
}

// Maximal induced subgraph with minimum degree >= k, via core numbers.
inline Graph kcore(const Graph& g, std::size_t k) {
  if (k == 0) return g;
  const auto cores = core_numbers(g);
  std::vector<bool> keep(g.num_vertices());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = cores.coreness[i] >= k;
  return induced_subgraph_mask(g, keep);
}

// Repeated whole-graph sweeps deleting any vertex with fewer than k live
// neighbors until a sweep deletes nothing. Quadratic worst case; kept as an
// independent check on the bucket peeler.
inline Graph kcore_naive(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree_at(v);
  std::size_t remaining = n;
  bool changed = true;
  while (changed && remaining > 0) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v] || deg[v] >= k) continue;
      alive[v] = false;
      --remaining;
      changed = true;
      for (auto u : g.adjacent(v))
        if (alive[u]) --deg[u];
    }
  }
  return induced_subgraph_mask(g, alive);
}

struct ReducedGraph {
  Graph graph;
  VertexFilter filter;
};

// Keeps the (k+1)-core, which carries every persistence diagram of dimension
// >= k. Surviving vertices keep their original filter values.
inline ReducedGraph coral_reduce(const Graph& g, const VertexFilter& f, std::size_t k) {
  f.require_covers(g);
  ReducedGraph out;
  out.graph = kcore(g, k + 1);
  out.filter = f.restricted_to(out.graph);
  return out;
}

}  // namespace coraltda
