#pragma once

// Independent ground-truth enumerator for desk-scale instances. It walks every
// ordered partition of the customers into at most K routes (routes built left
// to right, canonicalized by increasing first customer so each unordered set
// of trips is visited once), prunes prefixes only on arithmetic that is
// provably monotone (capacity, window miss, horizon), and judges every
// complete candidate with validate(). No bounds, no incremental scheduling:
// this is the yardstick the branch-and-bound must tie with exactly.

#include <optional>
#include <vector>

#include "avrp/model.hpp"

namespace avrp::testing {

struct EnumerationResult {
  bool found = false;
  double objective = 0.0;
  Solution best;
  uint64_t leaves = 0;
};

namespace detail {

struct EnumContext {
  const Instance* inst;
  std::vector<int> unassigned;
  std::vector<std::vector<int>> routes;
  EnumerationResult result;
};

inline void enumerate_rec(EnumContext& ctx) {
  const Instance& inst = *ctx.inst;
  if (ctx.unassigned.empty()) {
    Solution sol;
    for (const auto& seq : ctx.routes) {
      Route r;
      r.vehicle = static_cast<int>(sol.routes.size());
      r.seq = seq;
      refresh_route(inst, r);
      sol.routes.push_back(std::move(r));
    }
    ++ctx.result.leaves;
    if (!validate(inst, sol).feasible()) return;
    const double obj = objective(sol);
    if (!ctx.result.found || obj < ctx.result.objective) {
      ctx.result.found = true;
      ctx.result.objective = obj;
      ctx.result.best = sol;
    }
    return;
  }

  auto try_extend = [&](std::vector<int>& seq, int candidate_index, bool fresh_route) {
    const int c = ctx.unassigned[static_cast<size_t>(candidate_index)];
    // Monotone prefix screens only; the full rule set is validate's job.
    double demand = inst.demand(c);
    for (const int x : seq) demand += inst.demand(x);
    if (demand > inst.capacity() + kEps) return;
    seq.push_back(c);
    const RouteTiming after = compute_route_timing(inst, seq);
    const double arrival = after.arrivals.back();
    const bool ok = arrival <= inst.late(c) + kEps && after.completion <= inst.horizon() + kEps;
    if (ok) {
      if (fresh_route) ctx.routes.push_back(seq);
      ctx.unassigned.erase(ctx.unassigned.begin() + candidate_index);
      enumerate_rec(ctx);
      ctx.unassigned.insert(ctx.unassigned.begin() + candidate_index, c);
      if (fresh_route) ctx.routes.pop_back();
    }
    seq.pop_back();
  };

  // Extend the open (last) route.
  if (!ctx.routes.empty()) {
    for (size_t i = 0; i < ctx.unassigned.size(); ++i) {
      try_extend(ctx.routes.back(), static_cast<int>(i), false);
    }
  }
  // Or open a new one; its first customer must exceed the previous route's
  // first customer, which canonicalizes the otherwise symmetric route order.
  if (static_cast<int>(ctx.routes.size()) < inst.max_vehicles() &&
      (ctx.routes.empty() || !ctx.routes.back().empty())) {
    const int prev_first = ctx.routes.empty() ? 0 : ctx.routes.back().front();
    for (size_t i = 0; i < ctx.unassigned.size(); ++i) {
      if (ctx.unassigned[i] <= prev_first) continue;
      std::vector<int> fresh;
      try_extend(fresh, static_cast<int>(i), true);
    }
  }
}

}  // namespace detail

inline EnumerationResult brute_force_optimum(const Instance& inst) {
  detail::EnumContext ctx;
  ctx.inst = &inst;
  // Reserved up front: recursion holds references into this vector while
  // opening new routes.
  ctx.routes.reserve(static_cast<size_t>(inst.max_vehicles()) + 1);
  for (int c = 1; c <= inst.customer_count(); ++c) ctx.unassigned.push_back(c);
  detail::enumerate_rec(ctx);
  return ctx.result;
}

}  // namespace avrp::testing
