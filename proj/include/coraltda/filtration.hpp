#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "coraltda/coral.hpp"
#include "coraltda/error.hpp"
#include "coraltda/filter.hpp"
#include "coraltda/graph.hpp"

namespace coraltda {

enum class Direction { sublevel, superlevel, power };

inline std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::sublevel: return "sublevel";
    case Direction::superlevel: return "superlevel";
    case Direction::power: return "power";
  }
  return "?";
}

// A clique, as strictly ascending vertex ids.
struct Simplex {
  std::vector<VertexId> vertices;

  std::size_t dimension() const { return vertices.size() - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct SimplexHash {
  std::size_t operator()(const std::vector<VertexId>& vs) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto v : vs) {
      h ^= std::hash<VertexId>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct FiltrationEntry {
  Simplex simplex;
  std::size_t birth_index;
  friend bool operator==(const FiltrationEntry&, const FiltrationEntry&) = default;
};

// Nested clique complexes K_0 ⊆ K_1 ⊆ ... where K_i holds every simplex with
// birth_index <= i.
//
// `thresholds` is listed in traversal order: ascending for sublevel and
// power, descending for superlevel. Simplices are kept in canonical order
// (birth_index, dimension, lexicographic vertices).
struct Filtration {
  std::vector<double> thresholds;
  std::vector<FiltrationEntry> simplices;
  Direction direction = Direction::sublevel;
  std::size_t maxdim = 0;

  double birth_value(std::size_t simplex) const { return thresholds[simplices[simplex].birth_index]; }

  // Threshold value on an axis that increases along the filtration; a
  // superlevel filtration is reported on the -f axis.
  double oriented_value(std::size_t threshold_index) const {
    const double x = thresholds[threshold_index];
    return direction == Direction::superlevel ? -x : x;
  }

  std::size_t count_dimension(std::size_t dim) const {
    return static_cast<std::size_t>(std::count_if(simplices.begin(), simplices.end(),
                                                  [&](const auto& e) { return e.simplex.dimension() == dim; }));
  }
};

// Sorted distinct filter values, or with `step` a regular grid
// min, min+step, ... reaching max.
inline std::vector<double> thresholds_of(const VertexFilter& f, std::optional<double> step = std::nullopt) {
  if (f.empty()) throw InvalidInput("thresholds of an empty filter");
  std::vector<double> values;
  values.reserve(f.size());
  for (const auto& [v, x] : f.values()) values.push_back(x);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (!step) return values;
  if (!(*step > 0.0)) throw InvalidInput("threshold step must be positive");
  const double lo = values.front();
  const double hi = values.back();
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / *step));
  std::vector<double> grid;
  for (std::size_t i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * *step);
  if (grid.back() < hi) grid.push_back(hi);
  return grid;
}

// Every clique with 1..max_size vertices, each once, vertices ascending.
//
// Cliques are grown along a degeneracy order: each vertex is only extended by
// neighbors that come later in the order, so no clique is produced twice.
inline std::vector<Simplex> enumerate_cliques(const Graph& g, std::size_t max_size) {
  if (max_size < 1) throw InvalidInput("enumerate_cliques requires max_size >= 1");
  const std::size_t n = g.num_vertices();
  const auto cores = core_numbers(g);
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[cores.peel_order[i]] = i;

  std::vector<std::vector<Graph::Index>> later(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (auto b : g.adjacent(a))
      if (rank[b] > rank[a]) later[a].push_back(b);
  }

  std::vector<Simplex> out;
  std::vector<Graph::Index> clique;
  auto emit = [&] {
    Simplex s;
    for (auto i : clique) s.vertices.push_back(g.id_at(i));
    std::sort(s.vertices.begin(), s.vertices.end());
    out.push_back(std::move(s));
  };
  // candidates: sorted indices adjacent to every member of `clique`.
  std::function<void(const std::vector<Graph::Index>&)> extend = [&](const std::vector<Graph::Index>& candidates) {
    emit();
    if (clique.size() == max_size) return;
    for (auto w : candidates) {
      std::vector<Graph::Index> next;
      const auto& lw = later[w];
      std::set_intersection(candidates.begin(), candidates.end(), lw.begin(), lw.end(), std::back_inserter(next));
      clique.push_back(w);
      extend(next);
      clique.pop_back();
    }
  };
  for (std::size_t a = 0; a < n; ++a) {
    clique.assign(1, static_cast<Graph::Index>(a));
    extend(later[a]);
  }
  return out;
}

namespace detail {

inline void sort_canonical(std::vector<FiltrationEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const FiltrationEntry& a, const FiltrationEntry& b) {
    return std::forward_as_tuple(a.birth_index, a.simplex.vertices.size(), a.simplex.vertices) <
           std::forward_as_tuple(b.birth_index, b.simplex.vertices.size(), b.simplex.vertices);
  });
}

// Shared body of the sublevel/superlevel builders. `ascending` selects the
// traversal direction; a simplex enters with its last vertex.
inline Filtration build_vertex_filtration(const Graph& g, const VertexFilter& f, std::size_t maxdim,
                                          std::optional<double> step, bool ascending) {
  f.require_covers(g);
  Filtration filt;
  filt.direction = ascending ? Direction::sublevel : Direction::superlevel;
  filt.maxdim = maxdim;
  if (g.empty()) return filt;

  const auto restricted = f.restricted_to(g);
  if (ascending) {
    filt.thresholds = thresholds_of(restricted, step);
  } else {
    auto flipped = thresholds_of(restricted.negated(), step);
    for (auto& x : flipped) x = -x;
    filt.thresholds = std::move(flipped);
  }

  auto index_for = [&](double value) -> std::size_t {
    const auto& t = filt.thresholds;
    if (ascending) return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), value) - t.begin());
    return static_cast<std::size_t>(
        std::lower_bound(t.begin(), t.end(), value, [](double a, double b) { return a > b; }) - t.begin());
  };

  for (auto& s : enumerate_cliques(g, maxdim + 1)) {
    double value = restricted.at(s.vertices.front());
    for (auto v : s.vertices) {
      const double x = restricted.at(v);
      value = ascending ? std::max(value, x) : std::min(value, x);
    }
    filt.simplices.push_back({std::move(s), index_for(value)});
  }
  sort_canonical(filt.simplices);
  return filt;
}

}  // namespace detail

// Sublevel clique filtration: K_i is the clique complex of the subgraph on
// {v : f(v) <= alpha_i}. A simplex is born at the max of its vertex values.
inline Filtration build_sublevel(const Graph& g, const VertexFilter& f, std::size_t maxdim,
                                 std::optional<double> step = std::nullopt) {
  return detail::build_vertex_filtration(g, f, maxdim, step, true);
}

// Superlevel clique filtration on {v : f(v) >= alpha_i}, thresholds descending.
// A simplex is born at the min of its vertex values.
inline Filtration build_superlevel(const Graph& g, const VertexFilter& f, std::size_t maxdim,
                                   std::optional<double> step = std::nullopt) {
  return detail::build_vertex_filtration(g, f, maxdim, step, false);
}

// Power filtration: K_0 is the vertex set, K_n the clique complex of G^n for
// n = 1..max_power. A clique is born at its largest pairwise distance.
inline Filtration build_power(const Graph& g, std::size_t maxdim, std::size_t max_power) {
  if (max_power < 1) throw InvalidInput("build_power requires max_power >= 1");
  Filtration filt;
  filt.direction = Direction::power;
  filt.maxdim = maxdim;
  for (std::size_t i = 0; i <= max_power; ++i) filt.thresholds.push_back(static_cast<double>(i));

  std::vector<std::vector<std::pair<Graph::Index, std::size_t>>> dist(g.num_vertices());
  std::vector<std::size_t> scratch;
  for (std::size_t a = 0; a < g.num_vertices(); ++a) dist[a] = bounded_distances(g, a, max_power, scratch);
  auto distance = [&](std::size_t a, std::size_t b) {
    const auto& row = dist[a];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(static_cast<Graph::Index>(b), std::size_t{0}));
    return it->second;
  };

  const auto power = graph_power(g, max_power);
  for (auto& s : enumerate_cliques(power, maxdim + 1)) {
    std::size_t birth = 0;
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
        birth = std::max(birth, distance(g.index_of(s.vertices[i]), g.index_of(s.vertices[j])));
    filt.simplices.push_back({std::move(s), birth});
  }
  detail::sort_canonical(filt.simplices);
  return filt;
}

// Throws StructuralError unless every face of every simplex is present and
// born no later, and no simplex exceeds maxdim.
inline void check_closure(const Filtration& filt) {
  std::unordered_map<std::vector<VertexId>, std::size_t, SimplexHash> birth;
  birth.reserve(filt.simplices.size());
  for (const auto& e : filt.simplices) {
    if (e.simplex.vertices.empty()) throw StructuralError("empty simplex in filtration");
    if (e.simplex.dimension() > filt.maxdim) throw StructuralError("simplex above the dimension cap");
    if (e.birth_index >= filt.thresholds.size()) throw StructuralError("birth index out of range");
    birth.emplace(e.simplex.vertices, e.birth_index);
  }
  std::vector<VertexId> face;
  for (const auto& e : filt.simplices) {
    const auto& vs = e.simplex.vertices;
    if (vs.size() < 2) continue;
    for (std::size_t skip = 0; skip < vs.size(); ++skip) {
      face.clear();
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (i != skip) face.push_back(vs[i]);
      auto it = birth.find(face);
      if (it == birth.end()) throw StructuralError("filtration is missing a face");
      if (it->second > e.birth_index) throw StructuralError("face born after its coface");
    }
  }
}

// One simplex per line: "birth_value v0 v1 ... vk", canonical order.
inline void write_filtration(std::ostream& os, const Filtration& filt) {
  for (const auto& e : filt.simplices) {
    os << filt.thresholds[e.birth_index];
    for (auto v : e.simplex.vertices) os << ' ' << v;
    os << '\n';
  }
}

}  // namespace coraltda
