#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avrp/bench.hpp"
#include "avrp/construct.hpp"
#include "avrp/exact.hpp"
#include "avrp/instance_io.hpp"
#include "avrp/metrics.hpp"
#include "avrp/model.hpp"
#include "avrp/solution_io.hpp"
#include "avrp/solver.hpp"

namespace fs = std::filesystem;
using namespace avrp;

namespace {

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::map<std::string, double> load_reference_csv(const fs::path& path) {
  std::map<std::string, double> refs;
  std::istringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) continue;
    const std::string name = line.substr(0, comma);
    if (name == "instance") continue;  // header
    refs[name] = std::stod(line.substr(comma + 1));
  }
  return refs;
}

std::vector<std::pair<std::string, Instance>> load_instances(const std::string& pattern) {
  std::vector<std::pair<std::string, Instance>> out;
  for (const fs::path& path : expand_instance_glob(pattern))
    out.emplace_back(path.stem().string(), load_instance_file(path));
  if (out.empty()) throw std::runtime_error("no instances match '" + pattern + "'");
  return out;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << "iter,best,current,temp,stack_size,vehicle_number\n";
  for (const TraceRow& row : trace) {
    out << row.iter << ',';
    if (row.best) out << *row.best;
    out << ',' << row.current << ',' << row.temp << ',' << row.stack_size << ','
        << row.vehicle_number << '\n';
  }
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"AND/OR precedence constrained VRPTW toolkit"};
  app.require_subcommand(1);

  // ---- make-sources ----
  auto* make_sources = app.add_subcommand(
      "make-sources", "Synthesize the 27 long-horizon Solomon-layout source files");
  std::string ms_out = "sources";
  uint64_t ms_seed = 1;
  make_sources->add_option("--out-dir", ms_out, "Output directory")->required();
  make_sources->add_option("--seed", ms_seed, "Synthesis seed");

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "Generate the AND/OR instance suite from Solomon sources");
  std::string gen_solomon, gen_out = "instances", gen_sizes = "10,20,30,40,50",
              gen_taus = "0.4,0.8";
  uint64_t gen_seed = 1;
  gen->add_option("--solomon-dir", gen_solomon, "Directory with Solomon .txt sources")->required();
  gen->add_option("--out-dir", gen_out, "Output directory")->required();
  gen->add_option("--sizes", gen_sizes, "Comma-separated sizes");
  gen->add_option("--tau", gen_taus, "Comma-separated tau values");
  gen->add_option("--seed", gen_seed, "Master suite seed");

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "Run the hybrid solver on one instance");
  std::string solve_instance, solve_params, solve_trace, solve_out;
  uint64_t solve_seed = 1;
  double solve_time_limit = 300.0;
  solve_cmd->add_option("--instance", solve_instance, "Instance file (.avrp)")->required();
  solve_cmd->add_option("--params", solve_params, "Solver parameter JSON file");
  solve_cmd->add_option("--seed", solve_seed, "Solver seed");
  solve_cmd->add_option("--time-limit", solve_time_limit, "Time limit in seconds");
  solve_cmd->add_option("--trace", solve_trace, "Write per-iteration trace CSV here");
  solve_cmd->add_option("--out", solve_out, "Solution JSON output path")->required();

  // ---- exact ----
  auto* exact_cmd = app.add_subcommand("exact", "Branch-and-bound oracle");
  std::string exact_instance, exact_out;
  double exact_time_limit = 60.0;
  exact_cmd->add_option("--instance", exact_instance, "Instance file (.avrp)")->required();
  exact_cmd->add_option("--time-limit", exact_time_limit, "Time limit in seconds");
  exact_cmd->add_option("--out", exact_out, "Result JSON output path")->required();

  // ---- export-lp ----
  auto* export_cmd = app.add_subcommand("export-lp", "Write the MILP in LP file format");
  std::string lp_instance, lp_out;
  export_cmd->add_option("--instance", lp_instance, "Instance file (.avrp)")->required();
  export_cmd->add_option("--out", lp_out, "LP output path")->required();

  // ---- validate ----
  auto* validate_cmd = app.add_subcommand("validate", "Check a solution against an instance");
  std::string val_instance, val_solution;
  validate_cmd->add_option("--instance", val_instance, "Instance file (.avrp)")->required();
  validate_cmd->add_option("--solution", val_solution, "Solution JSON file")->required();

  // ---- tune ----
  auto* tune_cmd = app.add_subcommand("tune", "Taguchi L9 parameter tuning");
  std::string tune_glob, tune_out;
  int tune_reps = 1, tune_workers = 1;
  uint64_t tune_seed = 1;
  double tune_exact_limit = 60.0;
  tune_cmd->add_option("--instances", tune_glob, "Instance glob or directory")->required();
  tune_cmd->add_option("--out", tune_out, "Response table CSV path")->required();
  tune_cmd->add_option("--repetitions", tune_reps, "Repetitions per (trial, instance)");
  tune_cmd->add_option("--workers", tune_workers, "Worker threads");
  tune_cmd->add_option("--seed", tune_seed, "Base seed");
  tune_cmd->add_option("--exact-time-limit", tune_exact_limit, "Oracle budget per instance");

  // ---- bench ----
  auto* bench_cmd = app.add_subcommand("bench", "Multi-run benchmark over an instance set");
  std::string bench_glob, bench_out, bench_params, bench_reference;
  int bench_runs = 5, bench_workers = 1, bench_exact_max_n = 10;
  uint64_t bench_seed = 1;
  double bench_exact_limit = 60.0;
  bench_cmd->add_option("--instances", bench_glob, "Instance glob or directory")->required();
  bench_cmd->add_option("--out", bench_out, "Report CSV path")->required();
  bench_cmd->add_option("--runs", bench_runs, "Runs per instance");
  bench_cmd->add_option("--workers", bench_workers, "Worker threads");
  bench_cmd->add_option("--seed", bench_seed, "Base seed");
  bench_cmd->add_option("--params", bench_params, "Solver parameter JSON file");
  bench_cmd->add_option("--reference", bench_reference,
                        "CSV of instance,reference pairs for RPE");
  bench_cmd->add_option("--exact-max-n", bench_exact_max_n, "Compute optima up to this size");
  bench_cmd->add_option("--exact-time-limit", bench_exact_limit, "Oracle budget per instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (make_sources->parsed()) {
    const auto names = synthesize_solomon_sources(ms_out, ms_seed);
    std::cout << "wrote " << names.size() << " source files to " << ms_out << "\n";
    return 0;
  }
  if (gen->parsed()) {
    SuiteSpec spec;
    spec.sizes = parse_int_list(gen_sizes);
    spec.taus = parse_double_list(gen_taus);
    spec.seed = gen_seed;
    const auto files = generate_suite(gen_solomon, gen_out, spec);
    std::cout << "wrote " << files.size() << " instances to " << gen_out << "\n";
    return 0;
  }
  if (solve_cmd->parsed()) {
    const Instance inst = load_instance_file(solve_instance);
    SolverParams params;
    if (!solve_params.empty()) params = params_from_json(read_text_file(solve_params));
    if (solve_cmd->count("--seed") > 0) params.seed = solve_seed;
    if (solve_cmd->count("--time-limit") > 0) params.time_limit_sec = solve_time_limit;
    const SolveResult result = solve(inst, params);
    write_text_file(solve_out,
                    solution_to_json(inst, result, fs::path(solve_instance).stem().string(),
                                     params.seed));
    if (!solve_trace.empty()) write_text_file(solve_trace, trace_to_csv(result.trace));
    std::cout << (result.feasible ? "feasible" : "no feasible solution") << " objective "
              << result.objective << " vehicles " << result.best.vehicle_number() << "\n";
    return result.feasible ? 0 : 1;
  }
  if (exact_cmd->parsed()) {
    const Instance inst = load_instance_file(exact_instance);
    ExactBudget budget;
    budget.time_limit_sec = exact_time_limit;
    const ExactResult result = solve_exact(inst, budget);
    std::ostringstream doc;
    doc << "{\n  \"status\": \"" << exact_status_name(result.status) << "\",\n";
    if (result.solution) {
      doc << "  \"objective\": " << result.objective << ",\n";
      doc << "  \"routes\": [";
      for (size_t r = 0; r < result.solution->routes.size(); ++r) {
        doc << (r == 0 ? "[" : ", [");
        const auto& seq = result.solution->routes[r].seq;
        for (size_t i = 0; i < seq.size(); ++i) doc << (i == 0 ? "" : ", ") << seq[i];
        doc << "]";
      }
      doc << "],\n";
    }
    doc << "  \"bound\": " << result.bound << ",\n";
    doc << "  \"nodesExplored\": " << result.nodes_explored << ",\n";
    doc << "  \"runtimeSec\": " << result.runtime_sec << "\n}\n";
    write_text_file(exact_out, doc.str());
    std::cout << exact_status_name(result.status);
    if (result.solution) std::cout << " objective " << result.objective;
    std::cout << "\n";
    return 0;
  }
  if (export_cmd->parsed()) {
    const Instance inst = load_instance_file(lp_instance);
    write_text_file(lp_out, export_lp(inst));
    std::cout << "wrote " << lp_out << "\n";
    return 0;
  }
  if (validate_cmd->parsed()) {
    const Instance inst = load_instance_file(val_instance);
    const Solution sol = solution_from_json(inst, read_text_file(val_solution));
    const ValidationReport report = validate(inst, sol);
    const bool complete = sol.complete(inst);
    if (report.feasible() && complete) {
      std::cout << "feasible, objective " << objective(sol) << "\n";
      return 0;
    }
    if (!complete && !sol.stack.empty()) std::cout << "incomplete: stack not empty\n";
    std::cout << report.to_string();
    return 1;
  }
  if (tune_cmd->parsed()) {
    const auto instances = load_instances(tune_glob);
    TuneOptions options;
    options.repetitions = tune_reps;
    options.workers = tune_workers;
    options.base_seed = tune_seed;
    options.exact_time_limit = tune_exact_limit;
    const TuneReport report = run_taguchi(instances, TaguchiPlan::default_plan(), options);
    write_text_file(tune_out, report.table.to_csv(report.plan));
    for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << "\n";
    std::cout << "wrote response table to " << tune_out << "\n";
    return 0;
  }
  if (bench_cmd->parsed()) {
    const auto instances = load_instances(bench_glob);
    BenchOptions options;
    options.runs = bench_runs;
    options.workers = bench_workers;
    options.base_seed = bench_seed;
    options.exact_max_n = bench_exact_max_n;
    options.exact_time_limit = bench_exact_limit;
    if (!bench_params.empty()) options.params = params_from_json(read_text_file(bench_params));
    if (!bench_reference.empty()) options.references = load_reference_csv(bench_reference);
    const BenchReport report = run_bench(instances, options);
    write_text_file(bench_out, report.to_csv());
    for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << "\n";
    std::cout << "wrote " << report.rows.size() << " rows to " << bench_out << "\n";
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
