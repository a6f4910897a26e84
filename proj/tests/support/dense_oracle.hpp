#pragma once

// Brute-force persistence for small graphs. Shares nothing with the library's
// clique enumeration, filtration builder or column reducer: every complex is
// rebuilt by subset enumeration and bars are read off persistent Betti
// numbers computed from dense GF(2) ranks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "coraltda/filter.hpp"
#include "coraltda/graph.hpp"
#include "coraltda/persistence.hpp"

namespace oracle {

using Bits = std::vector<std::uint64_t>;

inline Bits zero_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
inline void flip(Bits& b, std::size_t i) { b[i / 64] ^= std::uint64_t{1} << (i % 64); }
inline bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }

inline bool is_zero(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](auto w) { return w == 0; });
}

inline std::int64_t highest(const Bits& b) {
  for (std::size_t w = b.size(); w-- > 0;)
    if (b[w]) return static_cast<std::int64_t>(w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(b[w])));
  return -1;
}

inline void xor_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

// Rank of a set of vectors by Gaussian elimination on the highest set bit.
inline std::size_t rank(std::vector<Bits> rows) {
  std::map<std::int64_t, Bits> basis;
  std::size_t r = 0;
  for (auto& row : rows) {
    while (!is_zero(row)) {
      const auto h = highest(row);
      auto it = basis.find(h);
      if (it == basis.end()) {
        basis.emplace(h, row);
        ++r;
        break;
      }
      xor_into(row, it->second);
    }
  }
  return r;
}

// Basis of the kernel of the linear map sending column c to columns[c].
inline std::vector<Bits> kernel(const std::vector<Bits>& columns, std::size_t domain) {
  std::map<std::int64_t, std::pair<Bits, Bits>> pivots;  // pivot -> (image, combination)
  std::vector<Bits> out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    Bits image = columns[c];
    Bits combo = zero_bits(domain);
    flip(combo, c);
    while (!is_zero(image)) {
      const auto h = highest(image);
      auto it = pivots.find(h);
      if (it == pivots.end()) break;
      xor_into(image, it->second.first);
      xor_into(combo, it->second.second);
    }
    if (is_zero(image)) out.push_back(combo);
    else pivots.emplace(highest(image), std::make_pair(image, combo));
  }
  return out;
}

// One complex of the filtration, given as the graph whose clique complex it is.
struct Step {
  std::vector<bool> present;
  std::vector<std::vector<bool>> adjacent;
  double value;
};

using Clique = std::vector<std::size_t>;

inline bool in_step(const Clique& c, const Step& s) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!s.present[c[i]]) return false;
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (!s.adjacent[c[i]][c[j]]) return false;
  }
  return true;
}

// All vertex subsets of size `size` that form cliques in step `s`.
inline std::vector<Clique> subsets(std::size_t n, std::size_t size, const Step& s) {
  std::vector<Clique> out;
  Clique cur;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (cur.size() == size) {
      if (in_step(cur, s)) out.push_back(cur);
      return;
    }
    for (std::size_t v = next; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Diagram in dimensions 0..max_hom_dim of the nested steps (each must contain
// the previous). Pairs with equal birth and death step never appear.
inline coraltda::PersistenceDiagram persistence(std::size_t n, const std::vector<Step>& steps, std::size_t max_hom_dim) {
  coraltda::PersistenceDiagram pd;
  for (std::size_t d = 0; d <= max_hom_dim; ++d) pd.dims[d];
  if (steps.empty()) return pd;
  const std::size_t m = steps.size();
  const Step& last = steps.back();

  // simplices[k] = k-simplices of the final complex.
  std::vector<std::vector<Clique>> simplices(max_hom_dim + 2);
  std::vector<std::map<Clique, std::size_t>> index(max_hom_dim + 2);
  for (std::size_t k = 0; k < simplices.size(); ++k) {
    simplices[k] = subsets(n, k + 1, last);
    for (std::size_t i = 0; i < simplices[k].size(); ++i) index[k][simplices[k][i]] = i;
  }
  auto boundary = [&](std::size_t k, const Clique& c) {
    Bits b = zero_bits(simplices[k - 1].size());
    for (std::size_t skip = 0; skip < c.size(); ++skip) {
      Clique face;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != skip) face.push_back(c[i]);
      flip(b, index[k - 1].at(face));
    }
    return b;
  };

  for (std::size_t k = 0; k <= max_hom_dim; ++k) {
    const std::size_t domain = simplices[k].size();
    // Z[i]: cycle basis of K_i; B[j]: boundary generators of K_j.
    std::vector<std::vector<Bits>> Z(m), B(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::size_t> members;
      for (std::size_t s = 0; s < domain; ++s)
        if (in_step(simplices[k][s], steps[i])) members.push_back(s);
      if (k == 0) {
        for (auto s : members) {
          Bits e = zero_bits(domain);
          flip(e, s);
          Z[i].push_back(e);
        }
      } else {
        std::vector<Bits> cols;
        for (auto s : members) cols.push_back(boundary(k, simplices[k][s]));
        for (auto& combo : kernel(cols, members.size())) {
          Bits z = zero_bits(domain);
          for (std::size_t c = 0; c < members.size(); ++c)
            if (test(combo, c)) flip(z, members[c]);
          Z[i].push_back(z);
        }
      }
      for (const auto& c : simplices[k + 1])
        if (in_step(c, steps[i])) B[i].push_back(boundary(k + 1, c));
    }

    // beta[i][j] = rank of H_k(K_i) -> H_k(K_j).
    std::vector<std::vector<std::int64_t>> beta(m, std::vector<std::int64_t>(m, 0));
    for (std::size_t j = 0; j < m; ++j) {
      const auto rb = static_cast<std::int64_t>(rank(B[j]));
      for (std::size_t i = 0; i <= j; ++i) {
        const auto rz = static_cast<std::int64_t>(Z[i].size());
        auto both = Z[i];
        both.insert(both.end(), B[j].begin(), B[j].end());
        const auto rsum = static_cast<std::int64_t>(rank(both));
        const auto intersection = rz + rb - rsum;
        beta[i][j] = rz - intersection;
      }
    }
    auto b = [&](std::int64_t i, std::int64_t j) -> std::int64_t {
      if (i < 0) return 0;
      return beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (std::size_t i = 0; i < m; ++i) {
      const auto ii = static_cast<std::int64_t>(i);
      for (std::size_t j = i + 1; j < m; ++j) {
        const auto jj = static_cast<std::int64_t>(j);
        const auto mult = b(ii, jj - 1) - b(ii - 1, jj - 1) - b(ii, jj) + b(ii - 1, jj);
        for (std::int64_t r = 0; r < mult; ++r) pd.dims[k].push_back({steps[i].value, steps[j].value});
      }
      const auto last_idx = static_cast<std::int64_t>(m - 1);
      const auto mult = b(ii, last_idx) - b(ii - 1, last_idx);
      for (std::int64_t r = 0; r < mult; ++r) pd.dims[k].push_back({steps[i].value, coraltda::infinity});
    }
  }
  pd.sort();
  return pd;
}

inline std::vector<std::vector<bool>> adjacency_matrix(const coraltda::Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges()) {
    const auto a = g.index_of(e.u), b = g.index_of(e.v);
    adj[a][b] = adj[b][a] = true;
  }
  return adj;
}

// Sublevel (or, with superlevel = true, superlevel on the -f axis) filtration
// over the sorted distinct filter values.
inline coraltda::PersistenceDiagram vertex_filtration(const coraltda::Graph& g, const coraltda::VertexFilter& f,
                                                      std::size_t max_hom_dim, bool superlevel = false) {
  const std::size_t n = g.num_vertices();
  const auto adj = adjacency_matrix(g);
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = superlevel ? -f.at(g.id_at(i)) : f.at(g.id_at(i));
  std::vector<double> levels = key;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<Step> steps;
  for (double a : levels) {
    Step s{std::vector<bool>(n), adj, a};
    for (std::size_t i = 0; i < n; ++i) s.present[i] = key[i] <= a;
    steps.push_back(std::move(s));
  }
  return persistence(n, steps, max_hom_dim);
}

// Power filtration with steps 0..max_power; distances by Floyd-Warshall.
inline coraltda::PersistenceDiagram power_filtration(const coraltda::Graph& g, std::size_t max_hom_dim,
                                                     std::size_t max_power) {
  const std::size_t n = g.num_vertices();
  constexpr std::size_t far = std::numeric_limits<std::size_t>::max() / 4;
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, far));
  const auto adj = adjacency_matrix(g);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (adj[i][j]) dist[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  std::vector<Step> steps;
  for (std::size_t p = 0; p <= max_power; ++p) {
    Step s{std::vector<bool>(n, true), std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)),
           static_cast<double>(p)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s.adjacent[i][j] = i != j && dist[i][j] <= p;
    steps.push_back(std::move(s));
  }
  return persistence(n, steps, max_hom_dim);
}

}  // namespace oracle
