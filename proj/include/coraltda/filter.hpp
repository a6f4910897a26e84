#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coraltda/error.hpp"
#include "coraltda/graph.hpp"

namespace coraltda {

// Filtering function f: vertex id -> real value.
//
// Values are carried by id, so a filter computed on one graph keeps its
// original values when applied to any reduced subgraph of it.
class VertexFilter {
 public:
  VertexFilter() = default;
  explicit VertexFilter(std::map<VertexId, double> values) : values_(std::move(values)) {}

  void set(VertexId v, double value) { values_[v] = value; }

  double at(VertexId v) const {
    auto it = values_.find(v);
    if (it == values_.end()) throw InvalidInput("filter has no value for vertex " + std::to_string(v));
    return it->second;
  }

  bool contains(VertexId v) const { return values_.count(v) != 0; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  const std::map<VertexId, double>& values() const noexcept { return values_; }

  void require_covers(const Graph& g) const {
    for (VertexId v : g.vertex_ids())
      if (!contains(v)) throw InvalidInput("filter has no value for vertex " + std::to_string(v));
  }

  // Values aligned with g's vertex indices.
  std::vector<double> aligned(const Graph& g) const {
    std::vector<double> out;
    out.reserve(g.num_vertices());
    for (VertexId v : g.vertex_ids()) out.push_back(at(v));
    return out;
  }

  // Same values, restricted to the vertices of g. Never recomputed.
  VertexFilter restricted_to(const Graph& g) const {
    VertexFilter out;
    for (VertexId v : g.vertex_ids()) out.values_.emplace_hint(out.values_.end(), v, at(v));
    return out;
  }

  VertexFilter negated() const {
    VertexFilter out;
    for (const auto& [v, x] : values_) out.values_.emplace_hint(out.values_.end(), v, -x);
    return out;
  }

  friend bool operator==(const VertexFilter&, const VertexFilter&) = default;

 private:
  std::map<VertexId, double> values_;
};

inline VertexFilter degree_filter(const Graph& g) {
  VertexFilter f;
  for (std::size_t i = 0; i < g.num_vertices(); ++i) f.set(g.id_at(i), static_cast<double>(g.degree_at(i)));
  return f;
}

inline VertexFilter constant_filter(const Graph& g, double value) {
  VertexFilter f;
  for (VertexId v : g.vertex_ids()) f.set(v, value);
  return f;
}

}  // namespace coraltda
