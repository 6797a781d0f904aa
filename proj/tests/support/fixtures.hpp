#pragma once

// Shared instance/solution builders for the test suites.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "avrp/construct.hpp"
#include "avrp/solver.hpp"
#include "avrp/instance_io.hpp"
#include "avrp/model.hpp"
#include "avrp/moves.hpp"
#include "avrp/rng.hpp"

namespace avrp::testing {

#ifndef AVRP_TEST_DIR
#define AVRP_TEST_DIR "."
#endif

inline std::string read_golden_path(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing file " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string read_golden(const std::string& relative) {
  return read_golden_path(std::string(AVRP_TEST_DIR) + "/" + relative);
}

struct CustomerSpec {
  double x, y;
  double demand = 0.0;
  double service = 0.0;
  double early = 0.0;
  double late = -1.0;  // -1: defaults to the horizon
};

inline Instance make_instance(std::vector<CustomerSpec> specs, double horizon, double capacity,
                              int max_vehicles, std::vector<RelationTriple> rels = {}) {
  std::vector<Node> customers;
  for (size_t i = 0; i < specs.size(); ++i) {
    const CustomerSpec& s = specs[i];
    customers.push_back(Node{static_cast<int>(i) + 1, s.x, s.y, s.demand, s.service, s.early,
                             s.late < 0.0 ? horizon : s.late});
  }
  return Instance::build(Node{0, 0.0, 0.0, 0.0, 0.0, 0.0, horizon}, std::move(customers), horizon,
                         capacity, max_vehicles,
                         PrecedenceMatrix(static_cast<int>(specs.size()), rels), {});
}

inline Solution make_solution(const Instance& inst, std::vector<std::vector<int>> seqs,
                              std::vector<int> stack = {}) {
  Solution sol;
  for (auto& seq : seqs) {
    Route r;
    r.vehicle = static_cast<int>(sol.routes.size());
    r.seq = std::move(seq);
    refresh_route(inst, r);
    sol.routes.push_back(std::move(r));
  }
  sol.stack = std::move(stack);
  return sol;
}

// Random long-horizon instance with every customer reachable alone from the
// depot; tau controls precedence density. Mirrors the type-2 character the
// generator targets: wide windows, capacity binding before the horizon, a
// handful of trips.
inline Instance random_instance(Rng& rng, int n, double tau, int max_vehicles = 0) {
  const double horizon = 2000.0 + static_cast<double>(rng.uniform_int(0, 800));
  std::vector<CustomerSpec> specs;
  double total_demand = 0.0;
  for (int i = 0; i < n; ++i) {
    CustomerSpec s{};
    s.x = static_cast<double>(rng.uniform_int(-50, 50));
    s.y = static_cast<double>(rng.uniform_int(-50, 50));
    s.demand = static_cast<double>(rng.uniform_int(1, 20));
    s.service = static_cast<double>(rng.uniform_int(0, 15));
    const double t0 = std::sqrt(s.x * s.x + s.y * s.y);
    const double latest_ok = horizon - s.service - t0 - 1.0;
    if (rng.unit() < 0.3) {
      s.early = std::floor(t0 + rng.unit() * std::max(1.0, latest_ok - t0) * 0.4);
      s.late = std::min(latest_ok, s.early + horizon * 0.3 + rng.unit() * horizon * 0.4);
    } else {
      s.early = 0.0;
      s.late = latest_ok;
    }
    if (s.late < s.early) s.late = s.early;
    total_demand += s.demand;
    specs.push_back(s);
  }
  const int target_routes =
      std::clamp(n / 5, 2, 5) + static_cast<int>(rng.uniform_int(0, 1));
  const int k = max_vehicles > 0 ? max_vehicles : target_routes + 3;
  // Roughly n / target_routes customers per trip, with some slack.
  const double capacity = std::max(25.0, std::ceil(total_demand / target_routes * 1.4));

  // Precedence generation assumes customers sorted by latest arrival.
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double la = specs[static_cast<size_t>(a)].late, lb = specs[static_cast<size_t>(b)].late;
    return la != lb ? la < lb : a < b;
  });
  std::vector<CustomerSpec> sorted;
  sorted.reserve(specs.size());
  for (const int i : order) sorted.push_back(specs[static_cast<size_t>(i)]);

  Rng pm_rng(rng.next());
  PrecedenceMatrix pm = generate_precedence(n, tau, pm_rng);

  std::vector<Node> customers;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const CustomerSpec& s = sorted[i];
    customers.push_back(
        Node{static_cast<int>(i) + 1, s.x, s.y, s.demand, s.service, s.early, s.late});
  }
  return Instance::build(Node{0, 0.0, 0.0, 0.0, 0.0, 0.0, horizon}, std::move(customers), horizon,
                         capacity, k, std::move(pm), {});
}

// Rebuilds an instance identical to `inst` except for the fleet bound.
inline Instance with_max_vehicles(const Instance& inst, int max_vehicles) {
  std::vector<Node> customers;
  for (int c = 1; c <= inst.customer_count(); ++c) customers.push_back(inst.node(c));
  return Instance::build(inst.node(inst.depot()), std::move(customers), inst.horizon(),
                         inst.capacity(), max_vehicles,
                         PrecedenceMatrix(inst.customer_count(), inst.pm().triples()),
                         inst.meta());
}

struct FeasibleState {
  Instance inst;
  Solution sol;
};

// A feasible complete state with the fleet bound pinned just above what the
// solution uses; nullopt when no complete solution was found.
inline std::optional<FeasibleState> random_feasible_state(Rng& rng, int n, double tau,
                                                          int spare_vehicles = 1) {
  const Instance roomy = random_instance(rng, n, tau);
  Rng build_rng(rng.next());
  try {
    Solution sol = build_initial(roomy, build_rng);
    Instance inst = with_max_vehicles(roomy, sol.vehicle_number() + spare_vehicles);
    return FeasibleState{std::move(inst), std::move(sol)};
  } catch (const ConstructionFailure&) {
    // Let a short search complete what the sequential fill could not.
    SolverParams params;
    params.max_iter = 10;
    params.max_not_imp = 25;
    params.seed = rng.next();
    const SolveResult result = solve(roomy, params);
    if (!result.feasible) return std::nullopt;
    Instance inst = with_max_vehicles(roomy, result.best.vehicle_number() + spare_vehicles);
    return FeasibleState{std::move(inst), result.best};
  }
}

// Like random_feasible_state but only accepts instances the sequential fill
// itself completes; retries a few draws before giving up.
inline std::optional<FeasibleState> random_constructible_state(Rng& rng, int n, double tau,
                                                               int spare_vehicles = 1) {
  for (int attempt = 0; attempt < 30; ++attempt) {
    const Instance roomy = random_instance(rng, n, tau);
    Rng build_rng(rng.next());
    try {
      Solution sol = build_initial(roomy, build_rng);
      Instance inst = with_max_vehicles(roomy, sol.vehicle_number() + spare_vehicles);
      return FeasibleState{std::move(inst), std::move(sol)};
    } catch (const ConstructionFailure&) {
      continue;
    }
  }
  return std::nullopt;
}

// Uniformly draws a structurally well-formed move; nullopt when the solution
// cannot host the drawn kind.
inline std::optional<Move> random_move(Rng& rng, const Instance& inst, const Solution& sol) {
  const int v = sol.vehicle_number();
  if (v == 0) return std::nullopt;
  auto route_len = [&](int k) {
    return static_cast<int>(sol.routes[static_cast<size_t>(k)].seq.size());
  };
  switch (rng.uniform_int(0, sol.stack.empty() ? 4 : 5)) {
    case 0: {
      const int k = static_cast<int>(rng.uniform_int(0, v - 1));
      if (route_len(k) < 2) return std::nullopt;
      const int p = static_cast<int>(rng.uniform_int(0, route_len(k) - 1));
      const int q = static_cast<int>(rng.uniform_int(0, route_len(k) - 1));
      return Move{MoveKind::TransferWithin, k, p, k, q, -1};
    }
    case 1: {
      if (v < 2) return std::nullopt;
      const int k = static_cast<int>(rng.uniform_int(0, v - 1));
      int k2 = static_cast<int>(rng.uniform_int(0, v - 2));
      if (k2 >= k) ++k2;
      if (route_len(k) < 1) return std::nullopt;
      const int p = static_cast<int>(rng.uniform_int(0, route_len(k) - 1));
      const int q = static_cast<int>(rng.uniform_int(0, route_len(k2)));
      return Move{MoveKind::TransferAcross, k, p, k2, q, -1};
    }
    case 2: {
      const int k = static_cast<int>(rng.uniform_int(0, v - 1));
      if (route_len(k) < 2) return std::nullopt;
      int p = static_cast<int>(rng.uniform_int(0, route_len(k) - 1));
      int q = static_cast<int>(rng.uniform_int(0, route_len(k) - 2));
      if (q >= p) ++q;
      if (p > q) std::swap(p, q);
      return Move{MoveKind::ExchangeWithin, k, p, k, q, -1};
    }
    case 3: {
      if (v < 2) return std::nullopt;
      const int k = static_cast<int>(rng.uniform_int(0, v - 1));
      int k2 = static_cast<int>(rng.uniform_int(0, v - 2));
      if (k2 >= k) ++k2;
      if (route_len(k) < 1 || route_len(k2) < 1) return std::nullopt;
      const int p = static_cast<int>(rng.uniform_int(0, route_len(k) - 1));
      const int q = static_cast<int>(rng.uniform_int(0, route_len(k2) - 1));
      return Move{MoveKind::ExchangeAcross, k, p, k2, q, -1};
    }
    case 4: {
      const int k = static_cast<int>(rng.uniform_int(0, v - 1));
      if (route_len(k) < 1) return std::nullopt;
      const int p = static_cast<int>(rng.uniform_int(0, route_len(k) - 1));
      return Move{MoveKind::InsertVehicle, k, p, -1, -1, -1};
    }
    case 5: {
      const int node = sol.stack[static_cast<size_t>(
          rng.uniform_int(0, static_cast<int64_t>(sol.stack.size()) - 1))];
      const int k2 = static_cast<int>(rng.uniform_int(0, v - 1));
      const int q = static_cast<int>(rng.uniform_int(0, route_len(k2)));
      return Move{MoveKind::StackInsert, -1, -1, k2, q, node};
    }
    default:
      return std::nullopt;
  }
}

// Applies a move's structural surgery without any feasibility checking and
// refreshes caches; the way the fuzz suites manufacture broken solutions.
inline Solution apply_move_unchecked(const Instance& inst, const Solution& sol, const Move& move) {
  Solution out = sol;
  auto& routes = out.routes;
  switch (move.kind) {
    case MoveKind::TransferWithin: {
      auto& seq = routes[static_cast<size_t>(move.route)].seq;
      const int node = seq[static_cast<size_t>(move.pos)];
      seq.erase(seq.begin() + move.pos);
      seq.insert(seq.begin() + move.pos2, node);
      break;
    }
    case MoveKind::TransferAcross: {
      auto& src = routes[static_cast<size_t>(move.route)].seq;
      auto& dst = routes[static_cast<size_t>(move.route2)].seq;
      const int node = src[static_cast<size_t>(move.pos)];
      src.erase(src.begin() + move.pos);
      dst.insert(dst.begin() + move.pos2, node);
      break;
    }
    case MoveKind::ExchangeWithin: {
      auto& seq = routes[static_cast<size_t>(move.route)].seq;
      std::swap(seq[static_cast<size_t>(move.pos)], seq[static_cast<size_t>(move.pos2)]);
      break;
    }
    case MoveKind::ExchangeAcross: {
      auto& a = routes[static_cast<size_t>(move.route)].seq;
      auto& b = routes[static_cast<size_t>(move.route2)].seq;
      std::swap(a[static_cast<size_t>(move.pos)], b[static_cast<size_t>(move.pos2)]);
      break;
    }
    case MoveKind::InsertVehicle: {
      auto& src = routes[static_cast<size_t>(move.route)].seq;
      const int node = src[static_cast<size_t>(move.pos)];
      src.erase(src.begin() + move.pos);
      Route fresh;
      fresh.seq = {node};
      routes.push_back(std::move(fresh));
      break;
    }
    case MoveKind::StackInsert: {
      auto& dst = routes[static_cast<size_t>(move.route2)].seq;
      dst.insert(dst.begin() + move.pos2, move.node);
      out.stack.erase(std::find(out.stack.begin(), out.stack.end(), move.node));
      break;
    }
  }
  std::erase_if(out.routes, [](const Route& r) { return r.seq.empty(); });
  for (size_t k = 0; k < out.routes.size(); ++k) {
    out.routes[k].vehicle = static_cast<int>(k);
    refresh_route(inst, out.routes[k]);
  }
  return out;
}

}  // namespace avrp::testing
