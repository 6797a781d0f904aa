#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "avrp/model.hpp"
#include "avrp/rng.hpp"

namespace avrp {

struct SolverParams {
  int max_iter = 1200;
  int max_not_imp = 70;
  double temp0 = 100.0;
  double alpha = 0.95;
  double time_limit_sec = 300.0;
  uint64_t seed = 1;
};

struct NeighborhoodStats {
  uint64_t tried = 0;
  uint64_t accepted = 0;
  uint64_t rejected = 0;
  uint64_t infeasible = 0;
  uint64_t skipped = 0;  // neighborhood not applicable this iteration
};

struct SolveStats {
  std::array<NeighborhoodStats, 5> neighborhoods{};
  uint64_t sa_accepts = 0;
  uint64_t reinsertions = 0;
  uint64_t outer_iterations = 0;
  uint64_t new_vehicles = 0;
  uint64_t local_search_iterations = 0;
};

struct TraceRow {
  int iter = 0;
  std::optional<double> best;
  double current = 0.0;
  double temp = 0.0;
  int stack_size = 0;
  int vehicle_number = 0;
};

struct SolveResult {
  bool feasible = false;
  Solution best;       // feasible best when feasible, last state otherwise
  double objective = 0.0;
  SolveStats stats;
  std::vector<TraceRow> trace;
  double runtime_sec = 0.0;
};

struct SearchState {
  Solution current;
  std::optional<Solution> best;
  double best_objective = 0.0;
  double temp = 0.0;
  int not_imp = 1;
  Rng rng;
  SolveStats stats;

  explicit SearchState(uint64_t seed) : rng(seed) {}
};

// Travel-plus-service time per assigned node of one route (waiting excluded,
// depot legs included). Callers must skip empty routes.
double compute_route_index(const Instance& inst, const Route& route);

// Fleet-average counterpart: mean travel+service over active routes divided
// by mean node count.
double compute_index_threshold(const Instance& inst, const Solution& sol);

// Metropolis acceptance for a non-improving move (delta >= 0).
bool sa_accept(double delta, double temp, Rng& rng);

// Destruction phase: marks routes whose index meets the fleet threshold,
// tries to drain them into non-target routes (first feasible transfer), then
// removes the |vehicle_number - K| + 1 worst routes and stacks their nodes.
void perturb(const Instance& inst, Solution& sol, Rng& rng);

// Neighborhood sampling + SA acceptance + stack reinsertion loop; runs while
// the stack is non-empty and the no-improvement counter stays under the cap.
void local_search(const Instance& inst, SearchState& state, const SolverParams& params,
                  double deadline_sec, double start_sec);

SolveResult solve(const Instance& inst, const SolverParams& params);

}  // namespace avrp
