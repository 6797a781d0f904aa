#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avrp/model.hpp"

namespace avrp {

enum class MoveKind : uint8_t {
  TransferWithin,   // route/pos -> pos2 (insertion index after removal)
  TransferAcross,   // route/pos -> route2/pos2 (insertion index, 0..len2)
  ExchangeWithin,   // route: pos < pos2 swapped
  ExchangeAcross,   // route/pos <-> route2/pos2
  InsertVehicle,    // route/pos -> fresh singleton route
  StackInsert,      // stack node -> route2/pos2
};

struct Move {
  MoveKind kind;
  int route = -1;
  int pos = -1;
  int route2 = -1;
  int pos2 = -1;
  int node = -1;  // StackInsert only
};

// Replacement content for one affected route; an empty seq means the move
// drained the route and apply_move drops it.
struct RoutePatch {
  int route = -1;
  std::vector<int> seq;
  std::vector<double> arrivals;
  double cum_demand = 0.0;
  double completion = 0.0;
};

struct MoveOutcome {
  bool feasible = false;
  double delta_objective = 0.0;
  std::vector<RoutePatch> patches;
  std::optional<RoutePatch> new_route;  // InsertVehicle
  int stack_node = -1;                  // StackInsert
};

// Per-stage evaluation counters; stage order is observable through them.
struct MoveEvalStats {
  uint64_t stage1 = 0;
  uint64_t stage2 = 0;
  uint64_t stage3 = 0;
};

// Stage 1: vehicle capacity on every affected route plus the fleet bound for
// InsertVehicle. Horizon screening for routes that only lose nodes is
// trivially true; routes whose arrivals shift are settled exactly in stage 3.
bool stage1_capacity_horizon(const Instance& inst, const Solution& sol, const Move& move);

// Stage 2: AND/OR precedence case analysis per move kind, positional on the
// post-move sequences.
bool stage2_precedence(const Instance& inst, const Solution& sol, const Move& move);

// Push backward: the head arrival of nodes[0..] drops by b0 >= 0. Returns the
// per-position decrease, B(u+1) = min(B(u), A(u+1) - e(u+1)), zeros once the
// decrease is absorbed by waiting slack. Never violates a window.
std::vector<double> push_backward_chain(const Instance& inst, std::span<const int> nodes,
                                        std::span<const double> old_arrivals, double b0);

struct ForwardPush {
  bool feasible = false;
  std::vector<double> deltas;
};

// Push forward: the head arrival rises by f0 >= 0. F(u+1) = max(F(u) - W(u+1), 0)
// with W the pre-move waiting time; infeasible as soon as A(k) + F(k) exceeds
// l(k); the suffix is untouched once F reaches zero.
ForwardPush push_forward_chain(const Instance& inst, std::span<const int> nodes,
                               std::span<const double> old_arrivals, double f0);

// Stage 3: incremental time-window / horizon check. On success the outcome
// carries exact replacement arrival vectors for every affected route.
bool stage3_time_windows(const Instance& inst, const Solution& sol, const Move& move,
                         MoveOutcome& outcome);

// Full three-stage evaluation, short-circuiting in stage order.
// delta_objective is filled for feasible moves only.
MoveOutcome check_move(const Instance& inst, const Solution& sol, const Move& move,
                       MoveEvalStats* stats = nullptr);

// Applies a move checked feasible. Patches replace route contents, drained
// routes are dropped (vehicle fields renumbered), InsertVehicle appends its
// fresh route, StackInsert consumes its stack node.
void apply_move(const Instance& inst, Solution& sol, const Move& move, const MoveOutcome& outcome);

}  // namespace avrp
