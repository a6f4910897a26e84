#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coraltda/filter.hpp"
#include "coraltda/graph.hpp"

namespace coraltda {

// Which filtration the pruning must preserve. Sublevel and superlevel need a
// filter; power does not.
enum class PruneMode { sublevel, superlevel, power };

inline std::string_view to_string(PruneMode m) {
  switch (m) {
    case PruneMode::sublevel: return "sublevel";
    case PruneMode::superlevel: return "superlevel";
    case PruneMode::power: return "power";
  }
  return "?";
}

struct PruneStep {
  VertexId pruned;
  VertexId dominator;
  std::size_t pass;  // 1-based sweep number
  friend bool operator==(const PruneStep&, const PruneStep&) = default;
};

struct PruneTrace {
  std::vector<PruneStep> steps;
  std::size_t passes = 0;  // sweeps executed, including the final one that removed nothing
  friend bool operator==(const PruneTrace&, const PruneTrace&) = default;
};

struct PruneOptions {
  // Follow the published sweep literally: pairs with identical closed
  // neighborhoods are never collapsed.
  bool strict_mutual_skip = false;
};

struct PruneResult {
  Graph graph;
  std::optional<VertexFilter> filter;
  PruneTrace trace;
};

namespace detail {

inline void require_filter(const VertexFilter* f, PruneMode mode, const Graph& g) {
  if (mode == PruneMode::power) return;
  if (f == nullptr) throw InvalidInput(std::string(to_string(mode)) + " pruning requires a vertex filter");
  f->require_covers(g);
}

// Whether removing u in favour of v keeps the filtration order safe:
// u may not enter the filtration before v.
inline bool order_allows(PruneMode mode, double fu, double fv) {
  switch (mode) {
    case PruneMode::sublevel: return fu >= fv;
    case PruneMode::superlevel: return fu <= fv;
    case PruneMode::power: return true;
  }
  return false;
}

// N[u] ⊆ N[v] for adjacent u, v, over live vertices. adj(v) may hold dead
// entries; only live members of adj(u) are looked up.
inline bool live_subset(const Graph& g, std::size_t u, std::size_t v, const std::vector<bool>& alive) {
  const auto au = g.adjacent(u);
  const auto av = g.adjacent(v);
  // Merge when the lists are comparable, binary search when v's list dwarfs u's.
  if (av.size() <= 8 * au.size()) {
    auto it = av.begin();
    for (auto x : au) {
      if (!alive[x] || x == v) continue;
      while (it != av.end() && *it < x) ++it;
      if (it == av.end() || *it != x) return false;
    }
    return true;
  }
  for (auto x : au) {
    if (!alive[x] || x == v) continue;
    if (!std::binary_search(av.begin(), av.end(), x)) return false;
  }
  return true;
}

}  // namespace detail

// N[u] ⊆ N[v] with closed neighborhoods; implies u and v are adjacent.
inline bool dominated_by(const Graph& g, VertexId u, VertexId v) {
  if (u == v) throw InvalidInput("dominated_by needs two distinct vertices");
  const auto a = g.index_of(u);
  const auto b = g.index_of(v);
  if (!g.has_edge_at(a, b)) return false;
  if (g.degree_at(a) > g.degree_at(b)) return false;
  const std::vector<bool> alive(g.num_vertices(), true);
  return detail::live_subset(g, a, b, alive);
}

// All (u, v) with u dominated by a neighbor v and the mode's order condition
// satisfied. Sorted by (u, v).
inline std::vector<std::pair<VertexId, VertexId>> find_prunable(const Graph& g, const VertexFilter* f,
                                                                PruneMode mode) {
  detail::require_filter(f, mode, g);
  std::vector<double> values;
  if (f) values = f->aligned(g);
  const std::vector<bool> alive(g.num_vertices(), true);
  std::vector<std::pair<VertexId, VertexId>> out;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    for (auto v : g.adjacent(u)) {
      if (g.degree_at(u) > g.degree_at(v)) continue;
      if (f && !detail::order_allows(mode, values[u], values[v])) continue;
      if (detail::live_subset(g, u, v, alive)) out.emplace_back(g.id_at(u), g.id_at(v));
    }
  }
  return out;
}

// Removes dominated vertices until none is eligible.
//
// Each sweep visits live vertices in ascending id order and removes a vertex
// as soon as one live neighbor dominates it under the mode's order
// condition. Domination is always judged on the current graph. When two
// vertices have identical closed neighborhoods and either may go, the larger
// id is removed. Sweeps repeat until one removes nothing. Surviving vertices
// keep their original filter values.
inline PruneResult prunit(const Graph& g, const VertexFilter* f, PruneMode mode, PruneOptions options = {}) {
  detail::require_filter(f, mode, g);
  const std::size_t n = g.num_vertices();
  std::vector<double> values;
  if (f) values = f->aligned(g);
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = g.degree_at(i);

  auto eligible = [&](std::size_t u, std::size_t v) {
    return mode == PruneMode::power || detail::order_allows(mode, values[u], values[v]);
  };

  PruneResult result;
  bool removed_any = true;
  while (removed_any) {
    removed_any = false;
    const std::size_t pass = ++result.trace.passes;
    for (std::size_t u = 0; u < n; ++u) {
      if (!alive[u]) continue;
      for (auto v : g.adjacent(u)) {
        if (!alive[v] || deg[u] > deg[v] || !eligible(u, v)) continue;
        if (!detail::live_subset(g, u, v, alive)) continue;
        // Equal degrees plus inclusion means equal closed neighborhoods.
        const bool mutual = deg[u] == deg[v] && eligible(v, u);
        if (mutual && (options.strict_mutual_skip || u < v)) continue;
        alive[u] = false;
        for (auto w : g.adjacent(u))
          if (alive[w]) --deg[w];
        result.trace.steps.push_back({g.id_at(u), g.id_at(v), pass});
        removed_any = true;
        break;
      }
    }
  }

  result.graph = induced_subgraph_mask(g, alive);
  if (f) result.filter = f->restricted_to(result.graph);
  return result;
}

inline void write_trace_csv(std::ostream& os, const PruneTrace& trace) {
  os << "pruned_id,dominator_id,pass\n";
  for (const auto& s : trace.steps) os << s.pruned << ',' << s.dominator << ',' << s.pass << '\n';
}

}  // namespace coraltda
