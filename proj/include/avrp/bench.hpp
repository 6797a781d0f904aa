#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avrp/exact.hpp"
#include "avrp/solver.hpp"
#include "avrp/taguchi.hpp"

namespace avrp {

struct BenchOptions {
  int runs = 5;
  int workers = 1;
  SolverParams params;
  uint64_t base_seed = 1;
  int exact_max_n = 10;          // optima computed up to this size
  double exact_time_limit = 60.0;
  std::map<std::string, double> references;  // instance name -> MILP reference value
};

struct BenchRow {
  std::string instance;
  int run = 0;
  uint64_t seed = 0;
  bool feasible = false;
  double objective = 0.0;
  int vehicle_number = 0;
  double runtime_sec = 0.0;
  std::optional<double> optimum;
  std::optional<double> re;
  std::optional<double> reference;
  std::optional<double> rpe;
};

struct BenchAggregate {
  std::string instance;
  int runs = 0;
  double best = 0.0;
  double mean = 0.0;
  double mean_runtime = 0.0;
  std::optional<double> mean_re;
  std::optional<double> mean_rpe;
};

struct BenchReport {
  std::vector<BenchRow> rows;         // ordered by (instance, run)
  std::vector<BenchAggregate> aggregates;
  std::vector<std::string> warnings;
  std::string to_csv() const;
};

// Runs `runs` seeded solves per instance over a worker pool; results are
// order-stable by (instance, run) regardless of worker count. Per-run seeds
// derive from (base_seed, instance, run).
BenchReport run_bench(const std::vector<std::pair<std::string, Instance>>& instances,
                      const BenchOptions& options);

struct TuneOptions {
  int repetitions = 1;
  int workers = 1;
  uint64_t base_seed = 1;
  double exact_time_limit = 60.0;
  SolverParams base_params;
};

struct TuneReport {
  TaguchiPlan plan;
  std::vector<TrialSummary> trials;
  ResponseTable table;
  std::vector<std::string> warnings;  // instances excluded for missing optima
};

// Executes the nine L9 trials over the tuning instances, aggregating per-run
// relative errors into the response table. Instances whose optimum the exact
// oracle cannot certify in budget are excluded with a warning.
TuneReport run_taguchi(const std::vector<std::pair<std::string, Instance>>& instances,
                       const TaguchiPlan& plan, const TuneOptions& options);

// Expands a glob (via POSIX fnmatch on the final path component) or a
// directory into a sorted list of .avrp files.
std::vector<std::filesystem::path> expand_instance_glob(const std::string& pattern);

}  // namespace avrp
