#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "coraltda/error.hpp"
#include "coraltda/filtration.hpp"

namespace coraltda {

enum class ZeroPairPolicy { drop, keep };

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  double birth;
  double death;  // infinity for classes that never die

  bool infinite() const { return death == infinity; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
  friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;

  friend std::ostream& operator<<(std::ostream& os, const PersistencePair& p) {
    os << '(' << p.birth << ", ";
    if (p.infinite()) os << "inf";
    else os << p.death;
    return os << ')';
  }
};

// Per-dimension multisets of (birth, death) pairs on the oriented value axis.
struct PersistenceDiagram {
  ZeroPairPolicy policy = ZeroPairPolicy::drop;
  std::map<std::size_t, std::vector<PersistencePair>> dims;

  const std::vector<PersistencePair>& pairs(std::size_t dim) const {
    static const std::vector<PersistencePair> none;
    auto it = dims.find(dim);
    return it == dims.end() ? none : it->second;
  }

  std::size_t infinite_count(std::size_t dim) const {
    const auto& p = pairs(dim);
    return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](const auto& x) { return x.infinite(); }));
  }

  void sort() {
    for (auto& [d, p] : dims) std::sort(p.begin(), p.end());
  }

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

struct PersistenceOptions {
  ZeroPairPolicy zero_pairs = ZeroPairPolicy::drop;
  // Skip columns already known to reduce to zero (their simplex is the pivot
  // of a higher-dimensional column). Off gives the textbook reducer.
  bool clearing = true;
};

// Index-level persistence pairing of a filtration's simplices in canonical
// order. partner[i] is the simplex paired with i, or -1 when i is unpaired.
// Only simplices of dimension <= top_dim take part.
struct Pairing {
  std::vector<std::int64_t> partner;
  std::vector<bool> negative;  // column reduced to non-zero: i kills a class
  std::size_t top_dim = 0;
};

namespace detail {

inline std::vector<std::vector<std::uint32_t>> boundary_columns(const Filtration& filt, std::size_t top_dim) {
  const std::size_t n = filt.simplices.size();
  std::unordered_map<std::vector<VertexId>, std::uint32_t, SimplexHash> position;
  position.reserve(n);
  for (std::size_t i = 0; i < n; ++i) position.emplace(filt.simplices[i].simplex.vertices, static_cast<std::uint32_t>(i));

  std::vector<std::vector<std::uint32_t>> columns(n);
  std::vector<VertexId> face;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& vs = filt.simplices[j].simplex.vertices;
    if (vs.size() < 2 || vs.size() - 1 > top_dim) continue;
    auto& col = columns[j];
    for (std::size_t skip = 0; skip < vs.size(); ++skip) {
      face.clear();
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (i != skip) face.push_back(vs[i]);
      auto it = position.find(face);
      if (it == position.end()) throw StructuralError("filtration is missing a face");
      if (it->second >= j) throw StructuralError("face ordered after its coface");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
  }
  return columns;
}

// a ^= b over the two-element field; both sorted ascending.
inline void add_column(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                       std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
  a.swap(scratch);
}

}  // namespace detail

// Standard left-to-right column reduction over the two-element field.
inline Pairing persistence_pairing(const Filtration& filt, std::size_t top_dim, bool clearing = true) {
  const std::size_t n = filt.simplices.size();
  auto columns = detail::boundary_columns(filt, top_dim);
  Pairing out;
  out.top_dim = top_dim;
  out.partner.assign(n, -1);
  out.negative.assign(n, false);

  constexpr std::int64_t none = -1;
  std::vector<std::int64_t> pivot_owner(n, none);
  std::vector<bool> cleared(n, false);
  std::vector<std::uint32_t> scratch;

  auto reduce = [&](std::size_t j) {
    auto& col = columns[j];
    while (!col.empty()) {
      const auto low = col.back();
      const auto owner = pivot_owner[low];
      if (owner == none) break;
      detail::add_column(col, columns[static_cast<std::size_t>(owner)], scratch);
    }
    if (col.empty()) return;
    const auto low = col.back();
    pivot_owner[low] = static_cast<std::int64_t>(j);
    out.partner[low] = static_cast<std::int64_t>(j);
    out.partner[j] = low;
    out.negative[j] = true;
    cleared[low] = true;
  };

  if (clearing) {
    // Higher dimensions first so their pivots can clear lower columns.
    for (std::size_t dim = top_dim; dim >= 1; --dim) {
      for (std::size_t j = 0; j < n; ++j) {
        if (filt.simplices[j].simplex.dimension() != dim) continue;
        if (cleared[j]) {
          columns[j].clear();
          continue;
        }
        reduce(j);
      }
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const auto dim = filt.simplices[j].simplex.dimension();
      if (dim >= 1 && dim <= top_dim) reduce(j);
    }
  }
  return out;
}

// Persistence diagrams in dimensions 0..max_hom_dim. Needs simplices up to
// max_hom_dim + 1 so that every death is seen.
inline PersistenceDiagram compute_pd(const Filtration& filt, std::size_t max_hom_dim,
                                     PersistenceOptions options = {}) {
  if (filt.maxdim < max_hom_dim + 1)
    throw InvalidInput("filtration must contain simplices up to dimension " + std::to_string(max_hom_dim + 1) +
                       " to compute diagrams up to dimension " + std::to_string(max_hom_dim));
  const auto pairing = persistence_pairing(filt, max_hom_dim + 1, options.clearing);

  PersistenceDiagram pd;
  pd.policy = options.zero_pairs;
  for (std::size_t d = 0; d <= max_hom_dim; ++d) pd.dims[d];
  for (std::size_t i = 0; i < filt.simplices.size(); ++i) {
    const auto dim = filt.simplices[i].simplex.dimension();
    if (dim > max_hom_dim || pairing.negative[i]) continue;
    const double birth = filt.oriented_value(filt.simplices[i].birth_index);
    const auto partner = pairing.partner[i];
    if (partner < 0) {
      pd.dims[dim].push_back({birth, infinity});
      continue;
    }
    const double death = filt.oriented_value(filt.simplices[static_cast<std::size_t>(partner)].birth_index);
    if (options.zero_pairs == ZeroPairPolicy::drop && birth == death) continue;
    pd.dims[dim].push_back({birth, death});
  }
  pd.sort();
  return pd;
}

// Dimension-0 diagram by union-find with the elder rule: when an edge joins
// two components, the one whose oldest vertex came later dies.
inline std::vector<PersistencePair> pd0_unionfind(const Filtration& filt,
                                                  ZeroPairPolicy policy = ZeroPairPolicy::drop) {
  if (filt.maxdim < 1) throw InvalidInput("pd0_unionfind needs edges in the filtration");
  std::unordered_map<VertexId, std::size_t> position;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> oldest;  // canonical position of the component's oldest vertex
  for (std::size_t i = 0; i < filt.simplices.size(); ++i) {
    const auto& vs = filt.simplices[i].simplex.vertices;
    if (vs.size() != 1) continue;
    position.emplace(vs[0], parent.size());
    parent.push_back(parent.size());
    oldest.push_back(i);
  }
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<PersistencePair> out;
  for (std::size_t i = 0; i < filt.simplices.size(); ++i) {
    const auto& vs = filt.simplices[i].simplex.vertices;
    if (vs.size() != 2) continue;
    auto a = find(position.at(vs[0]));
    auto b = find(position.at(vs[1]));
    if (a == b) continue;
    if (oldest[a] > oldest[b]) std::swap(a, b);
    // b is younger and dies here.
    const double birth = filt.oriented_value(filt.simplices[oldest[b]].birth_index);
    const double death = filt.oriented_value(filt.simplices[i].birth_index);
    if (!(policy == ZeroPairPolicy::drop && birth == death)) out.push_back({birth, death});
    parent[b] = a;
  }
  for (std::size_t x = 0; x < parent.size(); ++x) {
    if (find(x) != x) continue;
    out.push_back({filt.oriented_value(filt.simplices[oldest[x]].birth_index), infinity});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Betti numbers of the final complex, dimensions 0..max_hom_dim.
inline std::vector<std::size_t> betti_numbers(const Filtration& filt, std::size_t max_hom_dim) {
  const auto pd = compute_pd(filt, max_hom_dim);
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d <= max_hom_dim; ++d) out.push_back(pd.infinite_count(d));
  return out;
}

// {"dims": {"0": [[b, d], ...], ...}} with "inf" for infinite deaths.
inline nlohmann::json to_json(const PersistenceDiagram& pd) {
  nlohmann::json dims = nlohmann::json::object();
  for (const auto& [d, pairs] : pd.dims) {
    auto list = nlohmann::json::array();
    for (const auto& p : pairs) {
      if (p.infinite()) list.push_back({p.birth, "inf"});
      else list.push_back({p.birth, p.death});
    }
    dims[std::to_string(d)] = std::move(list);
  }
  return {{"dims", std::move(dims)}};
}

inline void write_csv(std::ostream& os, const PersistenceDiagram& pd) {
  os << "dim,birth,death\n";
  for (const auto& [d, pairs] : pd.dims) {
    for (const auto& p : pairs) {
      os << d << ',' << p.birth << ',';
      if (p.infinite()) os << "inf";
      else os << p.death;
      os << '\n';
    }
  }
}

}  // namespace coraltda
