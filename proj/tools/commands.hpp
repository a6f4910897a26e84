#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coraltda/datasets.hpp"
#include "coraltda/persistence.hpp"

namespace coraltda::cli {

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_input = 2 };

// $CORALTDA_DATA_DIR, else $XDG_CACHE_HOME/coraltda, else ~/.cache/coraltda.
std::filesystem::path data_dir();

Direction parse_direction(const std::string& text);
ZeroPairPolicy parse_zero_pairs(const std::string& text);

struct ReductionReport {
  std::string dataset;
  std::string method;
  std::string direction;
  std::string filter;
  std::optional<std::size_t> k;
  std::size_t vertices_before = 0, vertices_after = 0;
  std::size_t edges_before = 0, edges_after = 0;
  // Counts after the pruning stage of a combined run.
  std::optional<std::size_t> vertices_after_prunit, edges_after_prunit;
  std::optional<std::size_t> simplices_before, simplices_after;
  double ms_load = 0, ms_reduce = 0;
  std::optional<double> ms_filtration, ms_persistence;
  std::string invocation;

  double vertex_reduction() const;
  double edge_reduction() const;
};

nlohmann::json to_json(const ReductionReport& r);

struct ReduceOptions {
  std::filesystem::path input;
  std::string filter = "degree";
  std::string method = "prunit";  // prunit | coral | combined
  std::optional<std::size_t> k;
  std::string direction = "sub";
  bool strict_mutual_skip = false;
  // When set, filtrations of both graphs are built to this homology
  // dimension and timed along with persistence.
  std::optional<std::size_t> max_dim;
  std::optional<std::filesystem::path> out;
};

// Writes reduced.txt, filter.csv, report.json and (when pruning ran)
// trace.csv under options.out.
ReductionReport run_reduce(const ReduceOptions& options);

struct PdOptions {
  std::filesystem::path input;
  std::string filter = "degree";
  std::string direction = "sub";
  std::size_t max_dim = 1;
  std::string zero_pairs = "drop";
  std::string format = "json";  // json | csv
  std::optional<double> step;
  std::optional<std::size_t> max_power;  // power direction; default diameter
};

PersistenceDiagram run_pd(const PdOptions& options, std::ostream& out, std::ostream& log);

struct VerifyCliOptions {
  std::string theorem = "coral";  // coral | prunit-sub | prunit-super | prunit-power | combined
  std::string corpus = "er";      // er | er-connected
  std::size_t count = 200;
  std::size_t n_min = 8;
  std::size_t n_max = 30;
  std::vector<double> probabilities{0.1, 0.2, 0.3, 0.4, 0.5};
  std::uint64_t seed = 1;
  std::vector<std::size_t> dims{0, 1, 2};
  std::string zero_pairs = "drop";
  bool negative_control = false;
  bool strict_mutual_skip = false;
  std::size_t workers = 1;
  std::optional<std::filesystem::path> dump_dir;
};

struct VerifySummary {
  std::size_t checks = 0;
  std::size_t failures = 0;
};

// One JSON line per (instance, checked index) on `report`.
VerifySummary run_verify(const VerifyCliOptions& options, std::ostream& report, std::ostream& log);

struct KahleOptions {
  std::vector<std::size_t> n{100};
  std::vector<double> p{0.05};
  std::size_t seeds = 100;
  std::uint64_t seed = 1;
  std::size_t dim = 2;
  std::size_t workers = 1;
};

struct KahleRow {
  std::size_t n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  std::size_t betti = 0;
};

// Betti_dim of the clique complex of G(n, p) for every grid point and seed.
std::vector<KahleRow> kahle_sweep(const KahleOptions& options);
void write_kahle_csv(std::ostream& os, const KahleOptions& options, const std::vector<KahleRow>& rows);

struct ClusteringOptions {
  std::optional<std::filesystem::path> tu_dir;  // otherwise an ER corpus
  std::size_t count = 50;
  std::size_t n_min = 8;
  std::size_t n_max = 30;
  std::vector<double> probabilities{0.1, 0.2, 0.3, 0.4, 0.5};
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

struct ClusteringRow {
  std::string graph;
  double clustering = 0;
  std::size_t betti2 = 0;
  std::size_t betti3 = 0;
};

std::vector<ClusteringRow> clustering_betti(const ClusteringOptions& options);
void write_clustering_csv(std::ostream& os, const std::vector<ClusteringRow>& rows);

struct BenchOptions {
  std::vector<std::filesystem::path> inputs;  // empty: every manifest dataset found in the data dir
  std::filesystem::path manifest;
  std::vector<std::size_t> cores{2, 3};
  std::size_t workers = 1;
};

// Reduction percentages on large graphs: prunit with superlevel degree, the
// (k+1)-cores alone and the combined pipeline.
std::vector<ReductionReport> run_bench(const BenchOptions& options, std::ostream& log);
void write_bench_csv(std::ostream& os, const std::vector<ReductionReport>& rows);

struct FetchOptions {
  std::vector<std::string> names;  // empty: whole manifest
  std::filesystem::path manifest;
  std::filesystem::path dir;
  bool force = false;
};

int run_fetch(const FetchOptions& options, std::ostream& log);

// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv);

}  // namespace coraltda::cli
