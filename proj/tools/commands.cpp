#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "coraltda/coral.hpp"
#include "coraltda/prunit.hpp"
#include "coraltda/verify.hpp"
#include "fetch.hpp"

namespace coraltda::cli {

namespace fs = std::filesystem;

namespace {

std::string current_invocation;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs body(i) for i in [0, count) on up to `workers` threads.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

PruneMode prune_mode(Direction d) {
  switch (d) {
    case Direction::sublevel: return PruneMode::sublevel;
    case Direction::superlevel: return PruneMode::superlevel;
    case Direction::power: return PruneMode::power;
  }
  return PruneMode::power;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

double percent(std::size_t before, std::size_t after) {
  if (before == 0) return 0.0;
  return 100.0 * (static_cast<double>(before) - static_cast<double>(after)) / static_cast<double>(before);
}

Filtration build_for(const Graph& g, const VertexFilter& f, Direction d, std::size_t maxdim,
                     std::optional<double> step, std::size_t max_power) {
  switch (d) {
    case Direction::sublevel: return build_sublevel(g, f, maxdim, step);
    case Direction::superlevel: return build_superlevel(g, f, maxdim, step);
    case Direction::power: return build_power(g, maxdim, max_power);
  }
  throw InvalidInput("unknown direction");
}

}  // namespace

fs::path data_dir() {
  if (const char* env = std::getenv("CORALTDA_DATA_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "coraltda";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "coraltda";
  return fs::path("coraltda-data");
}

Direction parse_direction(const std::string& text) {
  if (text == "sub" || text == "sublevel") return Direction::sublevel;
  if (text == "super" || text == "superlevel") return Direction::superlevel;
  if (text == "power") return Direction::power;
  throw InvalidInput("unknown direction '" + text + "' (expected sub, super or power)");
}

ZeroPairPolicy parse_zero_pairs(const std::string& text) {
  if (text == "drop") return ZeroPairPolicy::drop;
  if (text == "keep") return ZeroPairPolicy::keep;
  throw InvalidInput("unknown zero-pair policy '" + text + "' (expected drop or keep)");
}

double ReductionReport::vertex_reduction() const { return percent(vertices_before, vertices_after); }
double ReductionReport::edge_reduction() const { return percent(edges_before, edges_after); }

nlohmann::json to_json(const ReductionReport& r) {
  nlohmann::json j{{"dataset", r.dataset},
                   {"method", r.method},
                   {"direction", r.direction},
                   {"filter", r.filter},
                   {"vertices_before", r.vertices_before},
                   {"vertices_after", r.vertices_after},
                   {"edges_before", r.edges_before},
                   {"edges_after", r.edges_after},
                   {"vertex_reduction_pct", r.vertex_reduction()},
                   {"edge_reduction_pct", r.edge_reduction()},
                   {"ms_load", r.ms_load},
                   {"ms_reduce", r.ms_reduce},
                   {"invocation", r.invocation}};
  j["k"] = r.k ? nlohmann::json(*r.k) : nlohmann::json(nullptr);
  if (r.vertices_after_prunit) j["vertices_after_prunit"] = *r.vertices_after_prunit;
  if (r.edges_after_prunit) j["edges_after_prunit"] = *r.edges_after_prunit;
  if (r.simplices_before) j["simplices_before"] = *r.simplices_before;
  if (r.simplices_after) j["simplices_after"] = *r.simplices_after;
  if (r.ms_filtration) j["ms_filtration"] = *r.ms_filtration;
  if (r.ms_persistence) j["ms_persistence"] = *r.ms_persistence;
  return j;
}

namespace {

struct Reduction {
  ReductionReport report;
  Graph graph;
  VertexFilter filter;
  std::optional<PruneTrace> trace;
};

Reduction reduce_graph(const Graph& g, const VertexFilter& f, const std::string& method, std::optional<std::size_t> k,
                       Direction direction, bool strict) {
  if (method != "prunit" && method != "coral" && method != "combined")
    throw InvalidInput("unknown method '" + method + "' (expected prunit, coral or combined)");
  if (method != "prunit" && !k) throw InvalidInput("--k is required for method " + method);

  Reduction out;
  auto& r = out.report;
  r.method = method;
  r.direction = std::string(to_string(direction));
  r.k = k;
  r.vertices_before = g.num_vertices();
  r.edges_before = g.num_edges();

  const auto start = Clock::now();
  Graph current = g;
  VertexFilter values = f;
  if (method != "coral") {
    PruneOptions options;
    options.strict_mutual_skip = strict;
    const auto mode = prune_mode(direction);
    auto pruned = prunit(current, mode == PruneMode::power ? nullptr : &values, mode, options);
    current = std::move(pruned.graph);
    values = values.restricted_to(current);
    out.trace = std::move(pruned.trace);
    if (method == "combined") {
      r.vertices_after_prunit = current.num_vertices();
      r.edges_after_prunit = current.num_edges();
    }
  }
  if (method != "prunit") {
    auto cored = coral_reduce(current, values, *k);
    current = std::move(cored.graph);
    values = std::move(cored.filter);
  }
  r.ms_reduce = elapsed_ms(start);
  r.vertices_after = current.num_vertices();
  r.edges_after = current.num_edges();
  out.graph = std::move(current);
  out.filter = std::move(values);
  return out;
}

}  // namespace

ReductionReport run_reduce(const ReduceOptions& options) {
  const auto load_start = Clock::now();
  const auto load = load_edge_list_file(options.input);
  const double ms_load = elapsed_ms(load_start);
  const auto spec = parse_filter_spec(options.filter);
  const auto f = resolve_filter(load.graph, spec);
  const auto direction = parse_direction(options.direction);

  auto reduction = reduce_graph(load.graph, f, options.method, options.k, direction, options.strict_mutual_skip);
  auto& report = reduction.report;
  report.dataset = options.input.stem().string();
  report.filter = spec.describe();
  report.ms_load = ms_load;
  report.invocation = current_invocation;

  if (options.max_dim) {
    const std::size_t max_power = std::max<std::size_t>(1, diameter(load.graph));
    auto t = Clock::now();
    const auto before = build_for(load.graph, f, direction, *options.max_dim + 1, std::nullopt, max_power);
    const auto after = build_for(reduction.graph, reduction.filter, direction, *options.max_dim + 1, std::nullopt,
                                 max_power);
    report.ms_filtration = elapsed_ms(t);
    report.simplices_before = before.simplices.size();
    report.simplices_after = after.simplices.size();
    t = Clock::now();
    compute_pd(before, *options.max_dim);
    compute_pd(after, *options.max_dim);
    report.ms_persistence = elapsed_ms(t);
  }

  if (options.out) {
    fs::create_directories(*options.out);
    auto edges = open_output(*options.out / "reduced.txt");
    write_edge_list(edges, reduction.graph);
    auto filter = open_output(*options.out / "filter.csv");
    write_filter_csv(filter, reduction.filter);
    if (reduction.trace) {
      auto trace = open_output(*options.out / "trace.csv");
      write_trace_csv(trace, *reduction.trace);
    }
    auto json = open_output(*options.out / "report.json");
    json << to_json(report).dump(2) << '\n';
  }
  return report;
}

PersistenceDiagram run_pd(const PdOptions& options, std::ostream& out, std::ostream& log) {
  if (options.format != "json" && options.format != "csv")
    throw InvalidInput("unknown format '" + options.format + "' (expected json or csv)");
  const auto load = load_edge_list_file(options.input);
  const auto direction = parse_direction(options.direction);
  const auto f = resolve_filter(load.graph, parse_filter_spec(options.filter));
  const std::size_t max_power = options.max_power.value_or(std::max<std::size_t>(1, diameter(load.graph)));
  if (max_power < 1) throw InvalidInput("--max-power must be at least 1");

  auto t = Clock::now();
  const auto filt = build_for(load.graph, f, direction, options.max_dim + 1, options.step, max_power);
  const double ms_build = elapsed_ms(t);
  t = Clock::now();
  PersistenceOptions popts;
  popts.zero_pairs = parse_zero_pairs(options.zero_pairs);
  const auto pd = compute_pd(filt, options.max_dim, popts);
  const double ms_pd = elapsed_ms(t);

  log << "vertices " << load.graph.num_vertices() << " edges " << load.graph.num_edges() << " thresholds "
      << filt.thresholds.size() << " simplices " << filt.simplices.size();
  for (std::size_t d = 0; d <= filt.maxdim; ++d) log << " dim" << d << '=' << filt.count_dimension(d);
  log << " build_ms " << ms_build << " pd_ms " << ms_pd << '\n';

  if (options.format == "json") {
    auto j = to_json(pd);
    j["direction"] = std::string(to_string(direction));
    j["zero_pairs"] = options.zero_pairs;
    out << j.dump() << '\n';
  } else {
    write_csv(out, pd);
  }
  return pd;
}

namespace {

struct CheckResult {
  std::string line;
  bool passed = true;
};

void dump_counterexample(const fs::path& dir, const std::string& stem, const Graph& g, const VertexFilter* f) {
  fs::create_directories(dir);
  auto edges = open_output(dir / (stem + ".txt"));
  write_edge_list(edges, g);
  if (f) {
    auto values = open_output(dir / (stem + ".filter.csv"));
    write_filter_csv(values, *f);
  }
}

}  // namespace

VerifySummary run_verify(const VerifyCliOptions& options, std::ostream& report, std::ostream& log) {
  static const std::vector<std::string> theorems{"coral", "prunit-sub", "prunit-super", "prunit-power", "combined"};
  if (std::find(theorems.begin(), theorems.end(), options.theorem) == theorems.end())
    throw InvalidInput("unknown theorem '" + options.theorem + "'");
  if (options.corpus != "er" && options.corpus != "er-connected")
    throw InvalidInput("unknown corpus '" + options.corpus + "' (expected er or er-connected)");
  if (options.dims.empty()) throw InvalidInput("--dims must name at least one dimension");

  CorpusSpec spec;
  spec.count = options.count;
  spec.n_min = options.n_min;
  spec.n_max = options.n_max;
  spec.probabilities = options.probabilities;
  spec.seed = options.seed;
  spec.connected = options.corpus == "er-connected";
  const auto corpus = er_corpus(spec);

  VerifyOptions vopts;
  vopts.max_dim = *std::max_element(options.dims.begin(), options.dims.end());
  vopts.zero_pairs = parse_zero_pairs(options.zero_pairs);
  vopts.negative_control = options.negative_control;
  vopts.prune.strict_mutual_skip = options.strict_mutual_skip;

  std::vector<std::vector<CheckResult>> results(corpus.size());
  parallel_for(corpus.size(), options.workers, [&](std::size_t i) {
    const auto& inst = corpus[i];
    const auto f = degree_filter(inst.graph);
    auto local = vopts;
    local.fault_seed = inst.seed;
    std::vector<VerificationReport> reports;
    if (options.theorem == "coral" || options.theorem == "combined") {
      for (auto j : options.dims) {
        reports.push_back(options.theorem == "coral" ? verify_coral(inst.graph, f, j, local)
                                                     : verify_combined(inst.graph, f, j, local));
      }
    } else if (options.theorem == "prunit-sub") {
      reports.push_back(verify_prunit(inst.graph, &f, PruneMode::sublevel, local));
    } else if (options.theorem == "prunit-super") {
      reports.push_back(verify_prunit(inst.graph, &f, PruneMode::superlevel, local));
    } else {
      reports.push_back(verify_prunit(inst.graph, nullptr, PruneMode::power, local));
    }
    for (auto& r : reports) {
      r.graph = inst.name;
      auto j = to_json(r);
      j["n"] = inst.n;
      j["p"] = inst.p;
      j["seed"] = inst.seed;
      j["invocation"] = current_invocation;
      const bool ok = r.passed();
      if (!ok && options.dump_dir) {
        const auto stem = inst.name + "-" + r.mode + "-d" + std::to_string(r.counterexample->dim);
        const bool with_filter = options.theorem != "prunit-power";
        dump_counterexample(*options.dump_dir, stem, inst.graph, with_filter ? &f : nullptr);
        j["dump"] = (*options.dump_dir / stem).string();
      }
      results[i].push_back({j.dump(), ok});
    }
  });

  VerifySummary summary;
  for (const auto& per_instance : results) {
    for (const auto& r : per_instance) {
      report << r.line << '\n';
      ++summary.checks;
      if (!r.passed) ++summary.failures;
    }
  }
  log << options.theorem << ": " << summary.checks - summary.failures << '/' << summary.checks << " checks passed over "
      << corpus.size() << " graphs\n";
  return summary;
}

std::vector<KahleRow> kahle_sweep(const KahleOptions& options) {
  std::vector<KahleRow> rows;
  for (auto n : options.n)
    for (auto p : options.p)
      for (std::size_t s = 0; s < options.seeds; ++s) rows.push_back({n, p, options.seed + s, 0});
  parallel_for(rows.size(), options.workers, [&](std::size_t i) {
    auto& row = rows[i];
    const auto g = random_graph(row.n, row.p, row.seed);
    // H_dim of the clique complex lives in the (dim+1)-core.
    const auto core = kcore(g, options.dim + 1);
    const auto filt = build_sublevel(core, constant_filter(core, 0), options.dim + 1);
    row.betti = betti_numbers(filt, options.dim)[options.dim];
  });
  return rows;
}

void write_kahle_csv(std::ostream& os, const KahleOptions& options, const std::vector<KahleRow>& rows) {
  os << "n,p,seed,betti_" << options.dim << ",nontrivial\n";
  for (const auto& r : rows) os << r.n << ',' << r.p << ',' << r.seed << ',' << r.betti << ',' << (r.betti > 0) << '\n';
}

std::vector<ClusteringRow> clustering_betti(const ClusteringOptions& options) {
  std::vector<std::pair<std::string, Graph>> graphs;
  if (options.tu_dir) {
    for (auto& lg : load_tu_dataset(*options.tu_dir)) graphs.emplace_back(lg.name, std::move(lg.graph));
  } else {
    CorpusSpec spec;
    spec.count = options.count;
    spec.n_min = options.n_min;
    spec.n_max = options.n_max;
    spec.probabilities = options.probabilities;
    spec.seed = options.seed;
    for (auto& inst : er_corpus(spec)) graphs.emplace_back(inst.name, std::move(inst.graph));
  }
  std::vector<ClusteringRow> rows(graphs.size());
  parallel_for(graphs.size(), options.workers, [&](std::size_t i) {
    const auto& [name, g] = graphs[i];
    auto& row = rows[i];
    row.graph = name;
    row.clustering = clustering_coefficient(g);
    for (std::size_t d : {2, 3}) {
      const auto core = kcore(g, d + 1);
      const auto betti = betti_numbers(build_sublevel(core, constant_filter(core, 0), d + 1), d)[d];
      (d == 2 ? row.betti2 : row.betti3) = betti;
    }
  });
  return rows;
}

void write_clustering_csv(std::ostream& os, const std::vector<ClusteringRow>& rows) {
  os << "graph,clustering,betti_2,betti_3\n";
  os.precision(10);
  for (const auto& r : rows) os << r.graph << ',' << r.clustering << ',' << r.betti2 << ',' << r.betti3 << '\n';
}

std::vector<ReductionReport> run_bench(const BenchOptions& options, std::ostream& log) {
  std::vector<std::pair<std::string, fs::path>> inputs;
  if (options.inputs.empty()) {
    auto in = detail::open_input(options.manifest);
    const auto dir = data_dir();
    for (const auto& entry : load_manifest(in)) {
      const auto path = dataset_path(dir, entry.name);
      if (fs::exists(path)) inputs.emplace_back(entry.name, path);
      else log << entry.name << ": not in " << dir.string() << ", skipped (run 'coraltda fetch')\n";
    }
  } else {
    for (const auto& p : options.inputs) inputs.emplace_back(p.stem().string(), p);
  }

  std::vector<std::vector<ReductionReport>> per_dataset(inputs.size());
  std::mutex log_mutex;
  parallel_for(inputs.size(), options.workers, [&](std::size_t i) {
    const auto& [name, path] = inputs[i];
    const auto start = Clock::now();
    const auto load = load_edge_list_file(path);
    const double ms_load = elapsed_ms(start);
    const auto f = degree_filter(load.graph);
    auto add = [&](const std::string& method, std::optional<std::size_t> k) {
      auto r = reduce_graph(load.graph, f, method, k, Direction::superlevel, false).report;
      r.dataset = name;
      r.filter = "degree";
      r.ms_load = ms_load;
      r.invocation = current_invocation;
      per_dataset[i].push_back(std::move(r));
    };
    add("prunit", std::nullopt);
    for (auto k : options.cores) {
      add("coral", k);
      add("combined", k);
    }
    std::lock_guard lock(log_mutex);
    const auto& p = per_dataset[i].front();
    log << name << ": prunit vertices -" << p.vertex_reduction() << "% edges -" << p.edge_reduction() << "%\n";
  });
  std::vector<ReductionReport> out;
  for (auto& rows : per_dataset)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

void write_bench_csv(std::ostream& os, const std::vector<ReductionReport>& rows) {
  os << "dataset,method,k,vertices_before,vertices_after,vertex_reduction_pct,edges_before,edges_after,"
        "edge_reduction_pct,ms_load,ms_reduce\n";
  os.precision(6);
  for (const auto& r : rows) {
    os << r.dataset << ',' << r.method << ',';
    if (r.k) os << *r.k;
    os << ',' << r.vertices_before << ',' << r.vertices_after << ',' << r.vertex_reduction() << ',' << r.edges_before
       << ',' << r.edges_after << ',' << r.edge_reduction() << ',' << r.ms_load << ',' << r.ms_reduce << '\n';
  }
}

int run_fetch(const FetchOptions& options, std::ostream& log) {
  auto in = detail::open_input(options.manifest);
  const auto manifest = load_manifest(in);
  std::vector<ManifestEntry> selected;
  if (options.names.empty()) {
    selected = manifest;
  } else {
    for (const auto& name : options.names) {
      auto it = std::find_if(manifest.begin(), manifest.end(), [&](const auto& e) { return e.name == name; });
      if (it == manifest.end()) throw InvalidInput("dataset '" + name + "' is not in the manifest");
      selected.push_back(*it);
    }
  }
  int status = exit_ok;
  for (const auto& entry : selected) {
    try {
      const auto path = fetch_dataset(entry, options.dir, options.force, log);
      const auto load = load_edge_list_file(path);
      log << entry.name << ": " << load.graph.num_vertices() << " vertices, " << load.graph.num_edges()
          << " edges (expected " << entry.vertices << ", " << entry.edges << ")\n";
    } catch (const std::runtime_error& e) {
      log << entry.name << ": " << e.what() << '\n';
      status = exit_failed;
    }
  }
  return status;
}

namespace {

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto token : detail::split_tokens(text, ", ")) {
    const auto dash = token.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(static_cast<std::size_t>(detail::parse_id(token, 0)));
      continue;
    }
    const auto lo = detail::parse_id(token.substr(0, dash), 0);
    const auto hi = detail::parse_id(token.substr(dash + 1), 0);
    for (auto d = lo; d <= hi; ++d) out.push_back(static_cast<std::size_t>(d));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int run(int argc, char** argv) {
  current_invocation = join_args(argc, argv);
  CLI::App app{"Graph reductions for clique-complex persistent homology"};
  app.require_subcommand(1);
  const fs::path default_manifest = CORALTDA_DEFAULT_MANIFEST;

  ReduceOptions reduce;
  std::string reduce_input;
  std::string reduce_out;
  auto* cmd_reduce = app.add_subcommand("reduce", "Reduce a graph and write the result");
  cmd_reduce->add_option("--input", reduce_input, "Edge list")->required();
  cmd_reduce->add_option("--filter", reduce.filter, "degree | coreness | constant:<v> | attr:<csv>");
  cmd_reduce->add_option("--method", reduce.method, "prunit | coral | combined");
  cmd_reduce->add_option("--k", reduce.k, "Core index (coral, combined)");
  cmd_reduce->add_option("--direction", reduce.direction, "sub | super | power");
  cmd_reduce->add_option("--max-dim", reduce.max_dim, "Also build and time filtrations to this dimension");
  cmd_reduce->add_option("--out", reduce_out, "Output directory");
  cmd_reduce->add_flag("--strict-alg2", reduce.strict_mutual_skip, "Never remove either vertex of a twin pair");

  PdOptions pd;
  std::string pd_input, pd_out;
  auto* cmd_pd = app.add_subcommand("pd", "Compute persistence diagrams");
  cmd_pd->add_option("--input", pd_input, "Edge list")->required();
  cmd_pd->add_option("--filter", pd.filter, "degree | coreness | constant:<v> | attr:<csv>");
  cmd_pd->add_option("--direction", pd.direction, "sub | super | power");
  cmd_pd->add_option("--max-dim", pd.max_dim, "Highest homology dimension");
  cmd_pd->add_option("--zero-pairs", pd.zero_pairs, "drop | keep");
  cmd_pd->add_option("--format", pd.format, "json | csv");
  cmd_pd->add_option("--step", pd.step, "Fixed threshold spacing");
  cmd_pd->add_option("--max-power", pd.max_power, "Highest graph power (power direction)");
  cmd_pd->add_option("--out", pd_out, "Output file (default stdout)");

  VerifyCliOptions verify;
  std::string verify_dims = "0,1,2", verify_report, verify_dump;
  auto* cmd_verify = app.add_subcommand("verify", "Check a reduction theorem over a random corpus");
  cmd_verify->add_option("--theorem", verify.theorem, "coral | prunit-sub | prunit-super | prunit-power | combined");
  cmd_verify->add_option("--corpus", verify.corpus, "er | er-connected");
  cmd_verify->add_option("--count", verify.count, "Number of graphs");
  cmd_verify->add_option("--n-min", verify.n_min, "Smallest vertex count");
  cmd_verify->add_option("--n-max", verify.n_max, "Largest vertex count");
  cmd_verify->add_option("--p", verify.probabilities, "Edge probabilities, cycled over the corpus")->delimiter(',');
  cmd_verify->add_option("--seed,--seeds", verify.seed, "Base seed");
  cmd_verify->add_option("--dims", verify_dims, "Dimensions, e.g. 0,1,2 or 1-2");
  cmd_verify->add_option("--zero-pairs", verify.zero_pairs, "drop | keep");
  cmd_verify->add_flag("--negative-control", verify.negative_control, "Delete one extra vertex after reducing");
  cmd_verify->add_flag("--strict-alg2", verify.strict_mutual_skip, "Never remove either vertex of a twin pair");
  cmd_verify->add_option("--workers", verify.workers, "Worker threads");
  cmd_verify->add_option("--report,--out", verify_report, "JSON lines report (default stdout)");
  cmd_verify->add_option("--dump-dir", verify_dump, "Write failing graphs here");

  auto* cmd_experiment = app.add_subcommand("experiment", "Random-graph and benchmark-set experiments");
  cmd_experiment->require_subcommand(1);
  KahleOptions kahle;
  std::string kahle_out;
  auto* cmd_kahle = cmd_experiment->add_subcommand("kahle-sweep", "Betti numbers of G(n, p) clique complexes");
  cmd_kahle->add_option("--n", kahle.n, "Vertex counts")->delimiter(',');
  cmd_kahle->add_option("--p", kahle.p, "Edge probabilities")->delimiter(',');
  cmd_kahle->add_option("--seeds", kahle.seeds, "Seeds per grid point");
  cmd_kahle->add_option("--seed", kahle.seed, "First seed");
  cmd_kahle->add_option("--dim", kahle.dim, "Homology dimension");
  cmd_kahle->add_option("--workers", kahle.workers, "Worker threads");
  cmd_kahle->add_option("--out", kahle_out, "CSV output (default stdout)");
  ClusteringOptions clustering;
  std::string clustering_tu, clustering_out;
  auto* cmd_clustering =
      cmd_experiment->add_subcommand("clustering-betti", "Clustering coefficient against Betti_2 and Betti_3");
  cmd_clustering->add_option("--tu", clustering_tu, "TU dataset directory (default: ER corpus)");
  cmd_clustering->add_option("--count", clustering.count, "ER corpus size");
  cmd_clustering->add_option("--n-min", clustering.n_min, "Smallest vertex count");
  cmd_clustering->add_option("--n-max", clustering.n_max, "Largest vertex count");
  cmd_clustering->add_option("--p", clustering.probabilities, "Edge probabilities")->delimiter(',');
  cmd_clustering->add_option("--seed,--seeds", clustering.seed, "Base seed");
  cmd_clustering->add_option("--workers", clustering.workers, "Worker threads");
  cmd_clustering->add_option("--out", clustering_out, "CSV output (default stdout)");

  BenchOptions bench;
  bench.manifest = default_manifest;
  std::vector<std::string> bench_inputs;
  std::string bench_manifest, bench_out;
  auto* cmd_bench = app.add_subcommand("bench", "Reduction percentages on large edge lists");
  cmd_bench->add_option("--input", bench_inputs, "Edge lists (default: fetched manifest datasets)");
  cmd_bench->add_option("--manifest", bench_manifest, "Dataset manifest CSV");
  cmd_bench->add_option("--k", bench.cores, "Core indices for coral and combined rows")->delimiter(',');
  cmd_bench->add_option("--workers", bench.workers, "Worker threads");
  cmd_bench->add_option("--out", bench_out, "CSV output (default stdout)");

  FetchOptions fetch;
  std::string fetch_manifest, fetch_dir;
  auto* cmd_fetch = app.add_subcommand("fetch", "Download manifest datasets into the cache directory");
  cmd_fetch->add_option("names", fetch.names, "Dataset names (default: all)");
  cmd_fetch->add_option("--manifest", fetch_manifest, "Dataset manifest CSV");
  cmd_fetch->add_option("--dir", fetch_dir, "Target directory (default: $CORALTDA_DATA_DIR)");
  cmd_fetch->add_flag("--force", fetch.force, "Download even when cached");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  // Writes to a file when a path was given, else stdout.
  auto with_output = [](const std::string& path, auto&& body) {
    if (path.empty()) {
      body(std::cout);
      return;
    }
    auto out = open_output(path);
    body(out);
  };

  try {
    if (cmd_reduce->parsed()) {
      reduce.input = reduce_input;
      if (!reduce_out.empty()) reduce.out = reduce_out;
      const auto report = run_reduce(reduce);
      std::cout << to_json(report).dump(2) << '\n';
      return exit_ok;
    }
    if (cmd_pd->parsed()) {
      pd.input = pd_input;
      with_output(pd_out, [&](std::ostream& os) { run_pd(pd, os, std::cerr); });
      return exit_ok;
    }
    if (cmd_verify->parsed()) {
      verify.dims = parse_dims(verify_dims);
      if (!verify_dump.empty()) verify.dump_dir = verify_dump;
      VerifySummary summary;
      with_output(verify_report, [&](std::ostream& os) { summary = run_verify(verify, os, std::cerr); });
      return summary.failures == 0 ? exit_ok : exit_failed;
    }
    if (cmd_kahle->parsed()) {
      const auto rows = kahle_sweep(kahle);
      with_output(kahle_out, [&](std::ostream& os) { write_kahle_csv(os, kahle, rows); });
      return exit_ok;
    }
    if (cmd_clustering->parsed()) {
      if (!clustering_tu.empty()) clustering.tu_dir = clustering_tu;
      const auto rows = clustering_betti(clustering);
      with_output(clustering_out, [&](std::ostream& os) { write_clustering_csv(os, rows); });
      return exit_ok;
    }
    if (cmd_bench->parsed()) {
      for (const auto& p : bench_inputs) bench.inputs.emplace_back(p);
      if (!bench_manifest.empty()) bench.manifest = bench_manifest;
      const auto rows = run_bench(bench, std::cerr);
      with_output(bench_out, [&](std::ostream& os) { write_bench_csv(os, rows); });
      return exit_ok;
    }
    if (cmd_fetch->parsed()) {
      fetch.manifest = fetch_manifest.empty() ? default_manifest : fs::path(fetch_manifest);
      fetch.dir = fetch_dir.empty() ? data_dir() : fs::path(fetch_dir);
      return run_fetch(fetch, std::cerr);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_input;
}

}  // namespace coraltda::cli
