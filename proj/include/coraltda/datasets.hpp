#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "coraltda/coral.hpp"
#include "coraltda/error.hpp"
#include "coraltda/filter.hpp"
#include "coraltda/graph.hpp"

namespace coraltda {

struct EdgeListLoad {
  Graph graph;
  NormalizationStats stats;
  std::size_t lines = 0;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line, std::string_view separators) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && separators.find(line[i]) != std::string_view::npos) ++i;
    const std::size_t start = i;
    while (i < line.size() && separators.find(line[i]) == std::string_view::npos) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline VertexId parse_id(std::string_view token, std::size_t line) {
  VertexId value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("expected a non-negative integer vertex id, got '" + std::string(token) + "'", line);
  return value;
}

inline double parse_real(std::string_view token, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::string s(token);
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw ParseError("expected a real value, got '" + std::string(token) + "'", line);
  }
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

}  // namespace detail

// Whitespace-separated "u v" pairs, one per line; '#' lines are comments.
// Directed inputs are symmetrized, self-loops dropped, duplicates merged.
// A line holding a single id declares an isolated vertex.
inline EdgeListLoad load_edge_list(std::istream& in) {
  EdgeListLoad out;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(in, line)) {
    ++out.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = detail::split_tokens(line, " \t,");
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens.size() == 1) {
      vertices.push_back(detail::parse_id(tokens[0], out.lines));
      continue;
    }
    if (tokens.size() > 2 && tokens[2].front() != '#')
      throw ParseError("expected two vertex ids per line", out.lines);
    edges.push_back({detail::parse_id(tokens[0], out.lines), detail::parse_id(tokens[1], out.lines)});
  }
  out.graph = Graph::from_edges(std::move(vertices), edges, &out.stats);
  return out;
}

inline EdgeListLoad load_edge_list_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return load_edge_list(in);
}

// Inverse of load_edge_list: edges ascending, then isolated vertices.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << "# vertices " << g.num_vertices() << " edges " << g.num_edges() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  for (std::size_t i = 0; i < g.num_vertices(); ++i)
    if (g.degree_at(i) == 0) os << g.id_at(i) << '\n';
}

struct LabeledGraph {
  Graph graph;
  int label = 0;
  std::string name;
};

using LabeledGraphSet = std::vector<LabeledGraph>;

// TU-Dortmund layout: DS_A.txt ("u, v" per line, 1-based global node ids),
// DS_graph_indicator.txt (line i = graph of node i), DS_graph_labels.txt
// (line g = label of graph g). Nodes keep their global ids.
inline LabeledGraphSet load_tu_dataset(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) throw FormatError(directory.string() + " is not a directory");
  std::string prefix;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const auto name = entry.path().filename().string();
    constexpr std::string_view suffix = "_A.txt";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      prefix = name.substr(0, name.size() - suffix.size());
      break;
    }
  }
  if (prefix.empty()) throw FormatError("no *_A.txt adjacency file in " + directory.string());

  auto require = [&](const std::string& suffix) {
    const auto path = directory / (prefix + suffix);
    if (!fs::exists(path)) throw FormatError("missing " + path.filename().string());
    return std::ifstream(path);
  };

  std::vector<std::size_t> graph_of;  // node id - 1 -> graph id
  {
    auto in = require("_graph_indicator.txt");
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      const auto tokens = detail::split_tokens(line, " \t,\r");
      if (tokens.empty()) continue;
      graph_of.push_back(detail::parse_id(tokens[0], n));
    }
  }
  std::vector<int> labels;
  {
    auto in = require("_graph_labels.txt");
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      const auto tokens = detail::split_tokens(line, " \t,\r");
      if (tokens.empty()) continue;
      labels.push_back(static_cast<int>(detail::parse_real(tokens[0], n)));
    }
  }
  const std::size_t graph_count = labels.size();
  std::vector<std::vector<VertexId>> nodes(graph_count);
  for (std::size_t i = 0; i < graph_of.size(); ++i) {
    const auto gid = graph_of[i];
    if (gid < 1 || gid > graph_count)
      throw FormatError("node " + std::to_string(i + 1) + " assigned to unknown graph " + std::to_string(gid));
    nodes[gid - 1].push_back(i + 1);
  }
  std::vector<std::vector<Edge>> edges(graph_count);
  {
    auto in = require("_A.txt");
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      const auto tokens = detail::split_tokens(line, " \t,\r");
      if (tokens.empty()) continue;
      if (tokens.size() != 2) throw ParseError("expected 'u, v'", n);
      const auto u = detail::parse_id(tokens[0], n);
      const auto v = detail::parse_id(tokens[1], n);
      if (u < 1 || v < 1 || u > graph_of.size() || v > graph_of.size())
        throw FormatError("edge " + std::to_string(u) + "," + std::to_string(v) + " on line " + std::to_string(n) +
                          " names a node missing from the graph indicator");
      if (graph_of[u - 1] != graph_of[v - 1])
        throw FormatError("edge " + std::to_string(u) + "," + std::to_string(v) + " on line " + std::to_string(n) +
                          " crosses graphs " + std::to_string(graph_of[u - 1]) + " and " +
                          std::to_string(graph_of[v - 1]));
      edges[graph_of[u - 1] - 1].push_back({u, v});
    }
  }
  LabeledGraphSet out;
  out.reserve(graph_count);
  for (std::size_t gi = 0; gi < graph_count; ++gi) {
    out.push_back({Graph::from_edges(std::move(nodes[gi]), edges[gi]), labels[gi],
                   prefix + "#" + std::to_string(gi + 1)});
  }
  return out;
}

// Induced subgraph on everything within `hops` of `center`.
inline Graph ego_network(const Graph& g, VertexId center, std::size_t hops) {
  if (hops < 1) throw InvalidInput("ego_network requires hops >= 1");
  const auto c = g.index_of(center);
  std::vector<std::size_t> scratch;
  VertexSet members{center};
  for (const auto& [b, d] : bounded_distances(g, c, hops, scratch)) members.push_back(g.id_at(b));
  return induced_subgraph(g, make_vertex_set(std::move(members)));
}

// "vertex_id,value" rows; a non-numeric first row is treated as a header.
inline std::map<VertexId, double> load_attribute_csv(std::istream& in) {
  std::map<VertexId, double> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto tokens = detail::split_tokens(line, ",\t \r");
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (n == 1 && (tokens[0].front() < '0' || tokens[0].front() > '9')) continue;
    if (tokens.size() < 2) throw ParseError("expected 'vertex_id,value'", n);
    out[detail::parse_id(tokens[0], n)] = detail::parse_real(tokens[1], n);
  }
  return out;
}

inline void write_filter_csv(std::ostream& os, const VertexFilter& f) {
  os << "vertex_id,value\n";
  os.precision(17);
  for (const auto& [v, x] : f.values()) os << v << ',' << x << '\n';
}

// Where a filter's values come from.
struct FilterSpec {
  enum class Kind { degree, coreness, constant, attribute };
  Kind kind = Kind::degree;
  double constant = 0.0;
  std::string source;                    // attribute CSV path, for display
  std::map<VertexId, double> attribute;  // loaded attribute column

  std::string describe() const {
    switch (kind) {
      case Kind::degree: return "degree";
      case Kind::coreness: return "coreness";
      case Kind::constant: {
        std::ostringstream os;
        os << "constant:" << constant;
        return os.str();
      }
      case Kind::attribute: return "attr:" + source;
    }
    return "?";
  }
};

// Parses degree | coreness | constant:<v> | attr:<csv path>.
inline FilterSpec parse_filter_spec(std::string_view text) {
  FilterSpec spec;
  if (text == "degree") return spec;
  if (text == "coreness") {
    spec.kind = FilterSpec::Kind::coreness;
    return spec;
  }
  if (text.starts_with("constant:")) {
    spec.kind = FilterSpec::Kind::constant;
    try {
      spec.constant = detail::parse_real(text.substr(9), 0);
    } catch (const ParseError&) {
      throw InvalidInput("bad constant filter value in '" + std::string(text) + "'");
    }
    return spec;
  }
  if (text.starts_with("attr:")) {
    spec.kind = FilterSpec::Kind::attribute;
    spec.source = std::string(text.substr(5));
    auto in = detail::open_input(spec.source);
    spec.attribute = load_attribute_csv(in);
    return spec;
  }
  throw InvalidInput("unknown filter '" + std::string(text) + "' (expected degree, coreness, constant:<v> or attr:<csv>)");
}

// Total filter on g's vertices. Degree and coreness are measured on g itself,
// so call this on the original graph and reduce afterwards.
inline VertexFilter resolve_filter(const Graph& g, const FilterSpec& spec) {
  switch (spec.kind) {
    case FilterSpec::Kind::degree: return degree_filter(g);
    case FilterSpec::Kind::coreness: {
      const auto cores = core_numbers(g);
      VertexFilter f;
      for (std::size_t i = 0; i < g.num_vertices(); ++i) f.set(g.id_at(i), static_cast<double>(cores.coreness[i]));
      return f;
    }
    case FilterSpec::Kind::constant: return constant_filter(g, spec.constant);
    case FilterSpec::Kind::attribute: {
      VertexFilter f;
      for (VertexId v : g.vertex_ids()) {
        auto it = spec.attribute.find(v);
        if (it == spec.attribute.end())
          throw InvalidInput("attribute file " + spec.source + " has no value for vertex " + std::to_string(v));
        f.set(v, it->second);
      }
      return f;
    }
  }
  throw InvalidInput("unhandled filter kind");
}

// One row of the dataset fetch manifest.
struct ManifestEntry {
  std::string name;
  std::string url;
  std::string sha256;  // empty when not pinned yet
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

// CSV with header name,url,sha256,vertices,edges.
inline std::vector<ManifestEntry> load_manifest(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    if (n == 1 && !cells.empty() && cells[0] == "name") continue;
    if (cells.size() != 5) throw ParseError("expected name,url,sha256,vertices,edges", n);
    out.push_back({cells[0], cells[1], cells[2], static_cast<std::size_t>(detail::parse_id(cells[3], n)),
                   static_cast<std::size_t>(detail::parse_id(cells[4], n))});
  }
  return out;
}

}  // namespace coraltda
