#include "avrp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "avrp/construct.hpp"
#include "avrp/moves.hpp"

namespace avrp {

namespace {

double now_sec() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double route_travel_service(const Instance& inst, const Route& route) {
  double total = 0.0;
  int prev = inst.depot();
  for (const int c : route.seq) {
    total += inst.travel(prev, c) + inst.service(c);
    prev = c;
  }
  total += inst.travel(prev, inst.dummy_depot());
  return total;
}

// All structurally valid moves of one neighborhood, for a randomized
// first-improvement scan.
std::vector<Move> enumerate_moves(int neighborhood, const Solution& sol, const Instance& inst) {
  std::vector<Move> moves;
  const int v = sol.vehicle_number();
  auto len_of = [&](int k) {
    return static_cast<int>(sol.routes[static_cast<size_t>(k)].seq.size());
  };
  switch (neighborhood) {
    case 0:  // transfer within a vehicle
      for (int k = 0; k < v; ++k) {
        const int len = len_of(k);
        if (len < 2) continue;
        for (int p = 0; p < len; ++p)
          for (int q = 0; q < len; ++q)
            if (q != p) moves.push_back({MoveKind::TransferWithin, k, p, k, q, -1});
      }
      break;
    case 1:  // transfer across vehicles
      for (int k = 0; k < v; ++k) {
        for (int k2 = 0; k2 < v; ++k2) {
          if (k2 == k) continue;
          for (int p = 0; p < len_of(k); ++p)
            for (int q = 0; q <= len_of(k2); ++q)
              moves.push_back({MoveKind::TransferAcross, k, p, k2, q, -1});
        }
      }
      break;
    case 2:  // exchange within a vehicle
      for (int k = 0; k < v; ++k) {
        const int len = len_of(k);
        for (int p = 0; p < len; ++p)
          for (int q = p + 1; q < len; ++q)
            moves.push_back({MoveKind::ExchangeWithin, k, p, k, q, -1});
      }
      break;
    case 3:  // exchange across vehicles
      for (int k = 0; k < v; ++k)
        for (int k2 = k + 1; k2 < v; ++k2)
          for (int p = 0; p < len_of(k); ++p)
            for (int q = 0; q < len_of(k2); ++q)
              moves.push_back({MoveKind::ExchangeAcross, k, p, k2, q, -1});
      break;
    case 4:  // insert a vehicle
      if (v >= inst.max_vehicles()) break;
      for (int k = 0; k < v; ++k) {
        if (len_of(k) < 2) continue;
        for (int p = 0; p < len_of(k); ++p)
          moves.push_back({MoveKind::InsertVehicle, k, p, -1, -1, -1});
      }
      break;
    default:
      break;
  }
  return moves;
}

// Randomized first-improvement scan of one neighborhood: the first strictly
// improving feasible move applies; failing that, one random feasible
// candidate faces the annealing test.
bool explore_neighborhood(int neighborhood, const Instance& inst, SearchState& state) {
  Solution& sol = state.current;
  NeighborhoodStats& ns = state.stats.neighborhoods[static_cast<size_t>(neighborhood)];
  std::vector<Move> candidates = enumerate_moves(neighborhood, sol, inst);
  if (candidates.empty()) {
    ++ns.skipped;
    return false;
  }
  state.rng.shuffle(candidates);

  bool have_fallback = false;
  Move fallback_move{};
  MoveOutcome fallback_outcome;
  for (const Move& move : candidates) {
    ++ns.tried;
    MoveOutcome outcome = check_move(inst, sol, move);
    if (!outcome.feasible) {
      ++ns.infeasible;
      continue;
    }
    if (outcome.delta_objective < -kEps) {
      apply_move(inst, sol, move, outcome);
      ++ns.accepted;
      if (have_fallback) ++ns.rejected;  // the pending fallback lost
      return true;
    }
    if (!have_fallback) {
      have_fallback = true;
      fallback_move = move;
      fallback_outcome = std::move(outcome);
    } else {
      ++ns.rejected;
    }
  }
  if (have_fallback) {
    if (sa_accept(std::max(fallback_outcome.delta_objective, 0.0), state.temp, state.rng)) {
      apply_move(inst, sol, fallback_move, fallback_outcome);
      ++ns.accepted;
      ++state.stats.sa_accepts;
      return true;
    }
    ++ns.rejected;
  }
  return false;
}

// Open a fresh vehicle and append stack nodes in random order until a full
// pass places nothing more. Returns how many nodes the new trip took.
int fill_new_vehicle(const Instance& inst, Solution& sol, Rng& rng, SolveStats& stats) {
  sol.routes.push_back(Route{sol.vehicle_number(), {}, {}, 0.0, 0.0});
  ++stats.new_vehicles;
  const int k = sol.vehicle_number() - 1;
  int placed = 0;
  bool progress = true;
  while (progress && !sol.stack.empty()) {
    progress = false;
    std::vector<int> order = sol.stack;
    rng.shuffle(order);
    for (const int node : order) {
      const Move move{MoveKind::StackInsert, -1, -1, k,
                      static_cast<int>(sol.routes[static_cast<size_t>(k)].seq.size()), node};
      const MoveOutcome outcome = check_move(inst, sol, move);
      if (outcome.feasible) {
        apply_move(inst, sol, move, outcome);
        ++stats.reinsertions;
        ++placed;
        progress = true;
      }
    }
  }
  // The fresh vehicle may have taken nothing at all.
  std::erase_if(sol.routes, [](const Route& r) { return r.seq.empty(); });
  for (size_t i = 0; i < sol.routes.size(); ++i) sol.routes[i].vehicle = static_cast<int>(i);
  return placed;
}

}  // namespace

double compute_route_index(const Instance& inst, const Route& route) {
  if (route.seq.empty()) throw std::invalid_argument("route index undefined for an empty route");
  return route_travel_service(inst, route) / static_cast<double>(route.seq.size());
}

double compute_index_threshold(const Instance& inst, const Solution& sol) {
  double sum_ts = 0.0;
  double sum_nodes = 0.0;
  int active = 0;
  for (const Route& r : sol.routes) {
    if (r.seq.empty()) continue;
    sum_ts += route_travel_service(inst, r);
    sum_nodes += static_cast<double>(r.seq.size());
    ++active;
  }
  if (active == 0) return 0.0;
  return (sum_ts / active) / (sum_nodes / active);
}

bool sa_accept(double delta, double temp, Rng& rng) {
  if (temp <= 0.0) throw std::invalid_argument("sa_accept requires a positive temperature");
  return rng.unit() < std::exp(-delta / temp);
}

void perturb(const Instance& inst, Solution& sol, Rng& rng) {
  if (sol.routes.empty()) return;

  // Threshold is computed once per perturbation; target flags are refreshed
  // against it after every accepted transfer.
  const double threshold = compute_index_threshold(inst, sol);
  auto target_flags = [&] {
    std::vector<char> target(static_cast<size_t>(sol.vehicle_number()), 0);
    for (int k = 0; k < sol.vehicle_number(); ++k)
      target[static_cast<size_t>(k)] =
          compute_route_index(inst, sol.routes[static_cast<size_t>(k)]) >= threshold - kEps;
    return target;
  };
  auto locate = [&](int node) -> std::pair<int, int> {
    for (int k = 0; k < sol.vehicle_number(); ++k) {
      const auto& seq = sol.routes[static_cast<size_t>(k)].seq;
      const auto it = std::find(seq.begin(), seq.end(), node);
      if (it != seq.end()) return {k, static_cast<int>(it - seq.begin())};
    }
    return {-1, -1};
  };

  // Pre-improvement: drain target routes into non-target ones, first feasible
  // receiver. Node ids are stable under the route-index shifts a drained
  // route causes, so the worklist is built from them.
  std::vector<char> target = target_flags();
  std::vector<int> worklist;
  for (int k = 0; k < sol.vehicle_number(); ++k) {
    if (!target[static_cast<size_t>(k)]) continue;
    std::vector<int> nodes = sol.routes[static_cast<size_t>(k)].seq;
    rng.shuffle(nodes);
    worklist.insert(worklist.end(), nodes.begin(), nodes.end());
  }
  for (const int node : worklist) {
    const auto [k, p] = locate(node);
    if (k < 0 || !target[static_cast<size_t>(k)]) continue;

    std::vector<int> receivers;
    for (int k2 = 0; k2 < sol.vehicle_number(); ++k2)
      if (k2 != k && !target[static_cast<size_t>(k2)]) receivers.push_back(k2);
    rng.shuffle(receivers);

    bool moved = false;
    for (const int k2 : receivers) {
      const int len2 = static_cast<int>(sol.routes[static_cast<size_t>(k2)].seq.size());
      for (int q = 0; q <= len2 && !moved; ++q) {
        const Move move{MoveKind::TransferAcross, k, p, k2, q, -1};
        const MoveOutcome outcome = check_move(inst, sol, move);
        if (outcome.feasible) {
          apply_move(inst, sol, move, outcome);
          moved = true;
        }
      }
      if (moved) break;
    }
    if (moved) target = target_flags();
  }

  // Removal: strip the worst |v - K| + 1 routes onto the stack.
  const int v = sol.vehicle_number();
  if (v == 0) return;
  int remove = std::abs(v - inst.max_vehicles()) + 1;
  remove = std::min(remove, v);

  std::vector<int> order(static_cast<size_t>(v));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> index(static_cast<size_t>(v));
  for (int k = 0; k < v; ++k)
    index[static_cast<size_t>(k)] = compute_route_index(inst, sol.routes[static_cast<size_t>(k)]);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ia = index[static_cast<size_t>(a)], ib = index[static_cast<size_t>(b)];
    return ia != ib ? ia > ib : a < b;
  });

  std::vector<char> doomed(static_cast<size_t>(v), 0);
  for (int r = 0; r < remove; ++r) doomed[static_cast<size_t>(order[static_cast<size_t>(r)])] = 1;
  std::vector<Route> kept;
  kept.reserve(static_cast<size_t>(v - remove));
  for (int k = 0; k < v; ++k) {
    if (doomed[static_cast<size_t>(k)]) {
      for (const int c : sol.routes[static_cast<size_t>(k)].seq) sol.stack.push_back(c);
    } else {
      kept.push_back(std::move(sol.routes[static_cast<size_t>(k)]));
    }
  }
  sol.routes = std::move(kept);
  for (size_t k = 0; k < sol.routes.size(); ++k) sol.routes[k].vehicle = static_cast<int>(k);
}

void local_search(const Instance& inst, SearchState& state, const SolverParams& params,
                  double deadline_sec, double start_sec) {
  // Exploration stays hot: the temperature restarts at every entry and cools
  // within. A run-global schedule froze reconstruction and lost feasible
  // completions on the small-instance suite.
  state.temp = params.temp0;
  state.not_imp = 1;
  Solution& sol = state.current;

  // The loop keeps polishing after the stack empties; it ends only once
  // max_not_imp consecutive iterations brought no improvement (or the clock
  // runs out). Ending at reinsertion would leave completed solutions without
  // a single descent pass and starves the no-improvement cap of any role.
  while (state.not_imp < params.max_not_imp) {
    if (now_sec() - start_sec > deadline_sec) break;
    ++state.stats.local_search_iterations;
    bool improve = false;

    std::vector<int> order{0, 1, 2, 3, 4};
    state.rng.shuffle(order);
    for (const int nb : order) {
      if (explore_neighborhood(nb, inst, state)) improve = true;
    }

    // Stack reinsertion: random node order, random vehicle order, first
    // feasible position wins.
    std::vector<int> nodes = sol.stack;
    state.rng.shuffle(nodes);
    for (const int node : nodes) {
      std::vector<int> vehicles(static_cast<size_t>(sol.vehicle_number()));
      std::iota(vehicles.begin(), vehicles.end(), 0);
      state.rng.shuffle(vehicles);
      bool placed = false;
      for (const int k : vehicles) {
        const int len = static_cast<int>(sol.routes[static_cast<size_t>(k)].seq.size());
        for (int q = 0; q <= len; ++q) {
          const Move move{MoveKind::StackInsert, -1, -1, k, q, node};
          const MoveOutcome outcome = check_move(inst, sol, move);
          if (outcome.feasible) {
            apply_move(inst, sol, move, outcome);
            ++state.stats.reinsertions;
            improve = true;
            placed = true;
            break;
          }
        }
        if (placed) break;
      }
    }

    if (!improve) ++state.not_imp;
    state.temp = std::max(state.temp * params.alpha, 1e-12);
  }
}

SolveResult solve(const Instance& inst, const SolverParams& params) {
  const double start = now_sec();
  SolveResult result;
  SearchState state(params.seed);

  // Customers the sequential fill cannot take start on the stack; the
  // new-vehicle logic and local-search reinsertion own their placement.
  state.current = build_initial_partial(inst, state.rng);

  state.temp = params.temp0;
  auto complete_current = [&] {
    while (!state.current.stack.empty() &&
           state.current.vehicle_number() < inst.max_vehicles() &&
           now_sec() - start < params.time_limit_sec) {
      const int placed = fill_new_vehicle(inst, state.current, state.rng, state.stats);
      local_search(inst, state, params, params.time_limit_sec, start);
      if (placed == 0 && !state.current.stack.empty()) break;  // stuck; back to perturbation
    }
  };
  if (!state.current.stack.empty()) {
    local_search(inst, state, params, params.time_limit_sec, start);
    complete_current();
  }

  auto consider_best = [&](int iter) {
    if (!state.current.complete(inst)) return;
    const double obj = objective(state.current);
    if (!state.best || obj < state.best_objective - kEps) {
      state.best = state.current;
      state.best_objective = obj;
    }
    (void)iter;
  };
  consider_best(0);

  auto trace_row = [&](int iter) {
    TraceRow row;
    row.iter = iter;
    if (state.best) row.best = state.best_objective;
    row.current = objective(state.current);
    row.temp = state.temp;
    row.stack_size = static_cast<int>(state.current.stack.size());
    row.vehicle_number = state.current.vehicle_number();
    result.trace.push_back(row);
  };
  trace_row(0);

  int iter = 1;
  while (iter < params.max_iter && now_sec() - start < params.time_limit_sec) {
    perturb(inst, state.current, state.rng);
    local_search(inst, state, params, params.time_limit_sec, start);
    complete_current();
    consider_best(iter);
    trace_row(iter);
    ++iter;
    ++state.stats.outer_iterations;
  }

  result.stats = state.stats;
  result.runtime_sec = now_sec() - start;
  if (state.best) {
    result.feasible = true;
    result.best = *state.best;
    result.objective = state.best_objective;
  } else {
    result.feasible = false;
    result.best = state.current;
    result.objective = objective(state.current);
  }
  return result;
}

}  // namespace avrp
