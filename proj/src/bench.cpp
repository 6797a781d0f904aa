#include "avrp/bench.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "avrp/metrics.hpp"
#include "avrp/rng.hpp"

namespace avrp {

namespace {

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_opt(const std::optional<double>& v) { return v ? csv_num(*v) : std::string(); }

// Static task split over a small pool; results land in pre-sized slots, so
// output order never depends on scheduling.
void parallel_for(size_t task_count, int workers, const std::function<void(size_t)>& body) {
  if (workers <= 1 || task_count <= 1) {
    for (size_t t = 0; t < task_count; ++t) body(t);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  const int count = std::min<int>(workers, static_cast<int>(task_count));
  pool.reserve(static_cast<size_t>(count));
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (size_t t = next.fetch_add(1); t < task_count; t = next.fetch_add(1)) body(t);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "instance,run,seed,feasible,objective,vehicles,runtime_sec,optimum,re_pct,reference,"
         "rpe_pct\n";
  for (const BenchRow& r : rows) {
    out << r.instance << ',' << r.run << ',' << r.seed << ',' << (r.feasible ? 1 : 0) << ','
        << csv_num(r.objective) << ',' << r.vehicle_number << ',' << csv_num(r.runtime_sec) << ','
        << csv_opt(r.optimum) << ',' << csv_opt(r.re) << ',' << csv_opt(r.reference) << ','
        << csv_opt(r.rpe) << '\n';
  }
  for (const BenchAggregate& a : aggregates) {
    out << a.instance << ",aggregate," << a.runs << ",,best=" << csv_num(a.best)
        << ",mean=" << csv_num(a.mean) << ',' << csv_num(a.mean_runtime) << ','
        << ',' << csv_opt(a.mean_re) << ",," << csv_opt(a.mean_rpe) << '\n';
  }
  return out.str();
}

BenchReport run_bench(const std::vector<std::pair<std::string, Instance>>& instances,
                      const BenchOptions& options) {
  BenchReport report;

  // Optima for small instances, computed once per instance.
  std::vector<std::optional<double>> optima(instances.size());
  parallel_for(instances.size(), options.workers, [&](size_t i) {
    const Instance& inst = instances[i].second;
    if (inst.customer_count() > options.exact_max_n) return;
    ExactBudget budget;
    budget.time_limit_sec = options.exact_time_limit;
    const ExactResult exact = solve_exact(inst, budget);
    if (exact.status == ExactStatus::Optimal) optima[i] = exact.objective;
  });

  const size_t task_count = instances.size() * static_cast<size_t>(options.runs);
  report.rows.resize(task_count);
  parallel_for(task_count, options.workers, [&](size_t t) {
    const size_t i = t / static_cast<size_t>(options.runs);
    const int run = static_cast<int>(t % static_cast<size_t>(options.runs));
    const auto& [name, inst] = instances[i];

    SolverParams params = options.params;
    params.seed = Rng::derive_seed(options.base_seed, name + "/run" + std::to_string(run));
    const SolveResult result = solve(inst, params);

    BenchRow row;
    row.instance = name;
    row.run = run;
    row.seed = params.seed;
    row.feasible = result.feasible;
    row.objective = result.objective;
    row.vehicle_number = result.best.vehicle_number();
    row.runtime_sec = result.runtime_sec;
    if (optima[i] && result.feasible) {
      row.optimum = optima[i];
      row.re = compute_re(result.objective, *optima[i]);
    }
    if (const auto it = options.references.find(name); it != options.references.end()) {
      row.reference = it->second;
      if (result.feasible) row.rpe = compute_rpe(result.objective, it->second);
    }
    report.rows[t] = std::move(row);
  });

  for (size_t i = 0; i < instances.size(); ++i) {
    BenchAggregate agg;
    agg.instance = instances[i].first;
    double sum = 0.0, sum_rt = 0.0, sum_re = 0.0, sum_rpe = 0.0;
    int re_count = 0, rpe_count = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int run = 0; run < options.runs; ++run) {
      const BenchRow& row = report.rows[i * static_cast<size_t>(options.runs) +
                                        static_cast<size_t>(run)];
      sum += row.objective;
      sum_rt += row.runtime_sec;
      best = std::min(best, row.objective);
      if (row.re) {
        sum_re += *row.re;
        ++re_count;
        if (*row.re < -kEps)
          report.warnings.push_back(row.instance + " run " + std::to_string(run) +
                                    ": solver beat the certified optimum (RE " +
                                    std::to_string(*row.re) + "%)");
      }
      if (row.rpe) {
        sum_rpe += *row.rpe;
        ++rpe_count;
      }
      agg.runs += 1;
    }
    agg.best = best;
    agg.mean = sum / options.runs;
    agg.mean_runtime = sum_rt / options.runs;
    if (re_count > 0) agg.mean_re = sum_re / re_count;
    if (rpe_count > 0) agg.mean_rpe = sum_rpe / rpe_count;
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

TuneReport run_taguchi(const std::vector<std::pair<std::string, Instance>>& instances,
                       const TaguchiPlan& plan, const TuneOptions& options) {
  TuneReport report;
  report.plan = plan;

  std::vector<std::optional<double>> optima(instances.size());
  parallel_for(instances.size(), options.workers, [&](size_t i) {
    ExactBudget budget;
    budget.time_limit_sec = options.exact_time_limit;
    const ExactResult exact = solve_exact(instances[i].second, budget);
    if (exact.status == ExactStatus::Optimal) optima[i] = exact.objective;
  });
  std::vector<size_t> usable;
  for (size_t i = 0; i < instances.size(); ++i) {
    if (optima[i])
      usable.push_back(i);
    else
      report.warnings.push_back(instances[i].first +
                                ": optimum not certified in budget, excluded from tuning");
  }

  const auto& l9 = TaguchiPlan::l9();
  report.trials.resize(l9.size());
  struct Task {
    int trial;
    size_t instance;
    int rep;
  };
  std::vector<Task> tasks;
  for (int trial = 0; trial < static_cast<int>(l9.size()); ++trial)
    for (const size_t i : usable)
      for (int rep = 0; rep < options.repetitions; ++rep) tasks.push_back({trial, i, rep});

  std::vector<double> responses(tasks.size(), 0.0);
  parallel_for(tasks.size(), options.workers, [&](size_t t) {
    const Task& task = tasks[t];
    SolverParams params = plan.params_for_trial(task.trial, options.base_params);
    params.seed = Rng::derive_seed(options.base_seed,
                                   instances[task.instance].first + "/trial" +
                                       std::to_string(task.trial) + "/rep" +
                                       std::to_string(task.rep));
    const SolveResult result = solve(instances[task.instance].second, params);
    responses[t] = result.feasible
                       ? compute_re(result.objective, *optima[task.instance])
                       : 100.0;  // a failed run scores as a flat 100% miss
  });

  for (int trial = 0; trial < static_cast<int>(l9.size()); ++trial) {
    TrialSummary& summary = report.trials[static_cast<size_t>(trial)];
    summary.trial = trial;
    summary.levels = l9[static_cast<size_t>(trial)];
  }
  for (size_t t = 0; t < tasks.size(); ++t)
    report.trials[static_cast<size_t>(tasks[t].trial)].responses.push_back(responses[t]);
  for (TrialSummary& summary : report.trials) {
    if (!summary.responses.empty()) {
      summary.sn = compute_sn(summary.responses);
      double sum = 0.0;
      for (const double r : summary.responses) sum += r;
      summary.mean = sum / static_cast<double>(summary.responses.size());
    }
  }
  report.table = build_response_table(plan, report.trials);
  return report;
}

std::vector<std::filesystem::path> expand_instance_glob(const std::string& pattern) {
  namespace fs = std::filesystem;
  std::vector<fs::path> out;
  const fs::path p(pattern);
  if (fs::is_directory(p)) {
    for (const auto& entry : fs::directory_iterator(p))
      if (entry.path().extension() == ".avrp") out.push_back(entry.path());
  } else {
    const fs::path dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
    const std::string leaf = p.filename().string();
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (fnmatch(leaf.c_str(), entry.path().filename().string().c_str(), 0) == 0)
          out.push_back(entry.path());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace avrp
