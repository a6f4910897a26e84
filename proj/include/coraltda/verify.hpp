#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coraltda/coral.hpp"
#include "coraltda/filtration.hpp"
#include "coraltda/persistence.hpp"
#include "coraltda/prunit.hpp"

namespace coraltda {

// Exact multiset equality of the requested dimensions. `tolerance` > 0
// compares values with an absolute tolerance after sorting, for filters read
// from external real-valued data.
inline bool pd_equal(const PersistenceDiagram& a, const PersistenceDiagram& b, const std::set<std::size_t>& dims,
                     double tolerance = 0.0) {
  if (a.policy != b.policy) throw InvalidInput("diagrams computed under different zero-pair policies");
  auto close = [&](double x, double y) {
    if (x == y) return true;
    if (std::isinf(x) || std::isinf(y)) return false;
    return std::abs(x - y) <= tolerance;
  };
  for (auto d : dims) {
    auto pa = a.pairs(d);
    auto pb = b.pairs(d);
    if (pa.size() != pb.size()) return false;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    for (std::size_t i = 0; i < pa.size(); ++i)
      if (!close(pa[i].birth, pb[i].birth) || !close(pa[i].death, pb[i].death)) return false;
  }
  return true;
}

// G(n, p) on vertex ids 0..n-1. Pairs (i, j), i < j, are visited in
// lexicographic order and each keeps its edge when the top 53 bits of the
// next std::mt19937_64 output, read as a fraction in [0, 1), fall below p.
// mt19937_64 output is fixed by the C++ standard, so graphs are identical on
// every platform.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<VertexId> vertices(n);
  for (std::size_t i = 0; i < n; ++i) vertices[i] = i;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(std::move(vertices), edges);
}

// A seeded sweep of random graphs.
struct CorpusSpec {
  std::size_t count = 200;
  std::size_t n_min = 8;
  std::size_t n_max = 30;
  std::vector<double> probabilities{0.1, 0.2, 0.3, 0.4, 0.5};
  std::uint64_t seed = 1;
  bool connected = false;  // resample until connected
};

struct CorpusInstance {
  std::string name;
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  Graph graph;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// Instance i uses p = probabilities[i % size], n drawn from [n_min, n_max]
// by splitmix64(seed + i), and generator seed seed + i (bumped by
// 1'000'003 per rejected draw when `connected` is set).
inline std::vector<CorpusInstance> er_corpus(const CorpusSpec& spec) {
  if (spec.probabilities.empty()) throw InvalidInput("corpus needs at least one edge probability");
  if (spec.n_min > spec.n_max) throw InvalidInput("corpus n_min exceeds n_max");
  std::vector<CorpusInstance> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    CorpusInstance inst;
    const std::uint64_t base = spec.seed + i;
    inst.p = spec.probabilities[i % spec.probabilities.size()];
    inst.n = spec.n_min + detail::splitmix64(base) % (spec.n_max - spec.n_min + 1);
    inst.seed = base;
    inst.graph = random_graph(inst.n, inst.p, inst.seed);
    for (std::size_t attempt = 1; spec.connected && !is_connected(inst.graph); ++attempt) {
      if (attempt > 100000) throw InvalidInput("could not draw a connected graph for corpus instance " + std::to_string(i));
      inst.seed = base + attempt * 1'000'003ULL;
      inst.graph = random_graph(inst.n, inst.p, inst.seed);
    }
    std::ostringstream name;
    name << "er-n" << inst.n << "-p" << inst.p << "-s" << inst.seed;
    inst.name = name.str();
    out.push_back(std::move(inst));
  }
  return out;
}

struct VerifyOptions {
  std::size_t max_dim = 2;  // highest homology dimension compared
  ZeroPairPolicy zero_pairs = ZeroPairPolicy::drop;
  double tolerance = 0.0;
  PruneOptions prune;
  // Delete one extra non-dominated vertex, chosen by fault_seed, from the
  // reduced graph before comparing, so a working comparator must report a
  // failure.
  bool negative_control = false;
  std::uint64_t fault_seed = 0;
};

struct Counterexample {
  Graph graph;
  std::optional<VertexFilter> filter;
  std::size_t dim = 0;
  PersistenceDiagram original;
  PersistenceDiagram reduced;
};

struct VerificationReport {
  std::string graph;
  std::string mode;
  std::vector<std::size_t> dims;
  std::map<std::size_t, bool> pass;
  std::size_t vertices_before = 0, vertices_after = 0;
  std::size_t edges_before = 0, edges_after = 0;
  std::optional<Counterexample> counterexample;

  bool passed() const {
    return std::all_of(pass.begin(), pass.end(), [](const auto& kv) { return kv.second; });
  }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json pass = nlohmann::json::object();
  for (const auto& [d, ok] : r.pass) pass[std::to_string(d)] = ok;
  nlohmann::json j{{"graph", r.graph},
                   {"mode", r.mode},
                   {"dims", r.dims},
                   {"pass", pass},
                   {"passed", r.passed()},
                   {"vertices_before", r.vertices_before},
                   {"vertices_after", r.vertices_after},
                   {"edges_before", r.edges_before},
                   {"edges_after", r.edges_after}};
  if (r.counterexample) {
    j["counterexample"] = {{"dim", r.counterexample->dim},
                           {"original", to_json(r.counterexample->original)},
                           {"reduced", to_json(r.counterexample->reduced)}};
  }
  return j;
}

namespace detail {

// Deletes one vertex that nothing dominates, picked uniformly by `seed` (any
// vertex when every vertex is dominated).
inline Graph inject_fault(const Graph& g, std::uint64_t seed) {
  if (g.empty()) return g;
  std::vector<VertexId> candidates;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    bool dominated = false;
    for (auto v : g.adjacent(u))
      if (dominated_by(g, g.id_at(u), g.id_at(v))) {
        dominated = true;
        break;
      }
    if (!dominated) candidates.push_back(g.id_at(u));
  }
  if (candidates.empty()) candidates.assign(g.vertex_ids().begin(), g.vertex_ids().end());
  std::mt19937_64 rng(seed);
  return remove_vertex(g, candidates[rng() % candidates.size()]);
}

using Builder = std::function<Filtration(const Graph&, const VertexFilter*)>;

inline VerificationReport compare(const std::string& mode, const Graph& original, const VertexFilter* f,
                                  const Graph& reduced, const VertexFilter* reduced_f, std::size_t first_dim,
                                  const VerifyOptions& options, const Builder& build) {
  VerificationReport report;
  report.mode = mode;
  report.vertices_before = original.num_vertices();
  report.edges_before = original.num_edges();
  const Graph& target = reduced;
  report.vertices_after = target.num_vertices();
  report.edges_after = target.num_edges();

  const std::size_t top = std::max(options.max_dim, first_dim);
  PersistenceOptions popts;
  popts.zero_pairs = options.zero_pairs;
  const auto pd_original = compute_pd(build(original, f), top, popts);
  const auto pd_reduced = compute_pd(build(target, reduced_f), top, popts);
  for (std::size_t d = first_dim; d <= top; ++d) {
    report.dims.push_back(d);
    const bool ok = pd_equal(pd_original, pd_reduced, {d}, options.tolerance);
    report.pass[d] = ok;
    if (!ok && !report.counterexample)
      report.counterexample = Counterexample{original, f ? std::optional<VertexFilter>(*f) : std::nullopt, d,
                                             pd_original, pd_reduced};
  }
  return report;
}

inline Builder sublevel_builder(std::size_t maxdim) {
  return [maxdim](const Graph& g, const VertexFilter* f) { return build_sublevel(g, *f, maxdim); };
}

}  // namespace detail

// PD_d(G, f) = PD_d(G^{j+1}, f) for d = j..max_dim, sublevel filtration.
inline VerificationReport verify_coral(const Graph& g, const VertexFilter& f, std::size_t j,
                                       const VerifyOptions& options = {}) {
  auto reduced = coral_reduce(g, f, j);
  if (options.negative_control) {
    reduced.graph = detail::inject_fault(reduced.graph, options.fault_seed);
    reduced.filter = f.restricted_to(reduced.graph);
  }
  const std::size_t top = std::max(options.max_dim, j);
  return detail::compare("coral", g, &f, reduced.graph, &reduced.filter, j, options,
                         detail::sublevel_builder(top + 1));
}

// Diagrams before and after dominated-vertex pruning. Sublevel and
// superlevel compare dimensions 0..max_dim; power compares 1..max_dim, with
// powers up to the original graph's diameter.
inline VerificationReport verify_prunit(const Graph& g, const VertexFilter* f, PruneMode mode,
                                        const VerifyOptions& options = {}) {
  auto pruned = prunit(g, f, mode, options.prune);
  if (options.negative_control) {
    pruned.graph = detail::inject_fault(pruned.graph, options.fault_seed);
    if (pruned.filter) pruned.filter = pruned.filter->restricted_to(pruned.graph);
  }
  const VertexFilter* reduced_f = pruned.filter ? &*pruned.filter : nullptr;
  const std::size_t maxdim = options.max_dim + 1;
  switch (mode) {
    case PruneMode::sublevel:
      return detail::compare("prunit-sub", g, f, pruned.graph, reduced_f, 0, options, detail::sublevel_builder(maxdim));
    case PruneMode::superlevel:
      return detail::compare("prunit-super", g, f, pruned.graph, reduced_f, 0, options,
                             [maxdim](const Graph& h, const VertexFilter* hf) { return build_superlevel(h, *hf, maxdim); });
    case PruneMode::power: {
      const std::size_t max_power = std::max<std::size_t>(1, diameter(g));
      return detail::compare("prunit-power", g, nullptr, pruned.graph, nullptr, 1, options,
                             [maxdim, max_power](const Graph& h, const VertexFilter*) {
                               return build_power(h, maxdim, max_power);
                             });
    }
  }
  throw InvalidInput("unknown prune mode");
}

// Sublevel pruning followed by the (k+1)-core; compares dimensions k..max_dim.
inline VerificationReport verify_combined(const Graph& g, const VertexFilter& f, std::size_t k,
                                          const VerifyOptions& options = {}) {
  const auto pruned = prunit(g, &f, PruneMode::sublevel, options.prune);
  auto reduced = coral_reduce(pruned.graph, *pruned.filter, k);
  if (options.negative_control) {
    reduced.graph = detail::inject_fault(reduced.graph, options.fault_seed);
    reduced.filter = f.restricted_to(reduced.graph);
  }
  const std::size_t top = std::max(options.max_dim, k);
  return detail::compare("combined", g, &f, reduced.graph, &reduced.filter, k, options,
                         detail::sublevel_builder(top + 1));
}

}  // namespace coraltda
