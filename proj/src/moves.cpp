#include "avrp/moves.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace avrp {

namespace {

bool contains(std::span<const int> prefix, int node) {
  return std::find(prefix.begin(), prefix.end(), node) != prefix.end();
}

// True when x keeps at least one OR-predecessor inside prefix, with `without`
// discounted (a node leaving the route) and `extra` counted as present (a node
// joining it ahead of x). 0 disables either slot.
bool or_covered(const PrecedenceMatrix& pm, std::span<const int> prefix, int x, int without,
                int extra) {
  for (const int o : pm.or_predecessors(x)) {
    if (o == without) continue;
    if (o == extra) return true;
    if (contains(prefix, o)) return true;
  }
  return false;
}

std::span<const int> prefix_of(const std::vector<int>& seq, int end) {
  return {seq.data(), static_cast<size_t>(end)};
}

// ---- stage 2 per move kind -------------------------------------------------

bool precedence_transfer_within(const PrecedenceMatrix& pm, const std::vector<int>& seq, int p,
                                int q) {
  const int i = seq[static_cast<size_t>(p)];
  if (q == p) return true;
  if (q > p) {
    // i passes over seq[p+1..q]; none of them may require i first, and none may
    // be left without an OR-predecessor ahead of it.
    for (int r = p + 1; r <= q; ++r) {
      const int x = seq[static_cast<size_t>(r)];
      if (pm.is_and_pred_of(i, x)) return false;
      if (pm.is_or_pred_of(i, x) && !or_covered(pm, prefix_of(seq, r), x, i, 0)) return false;
    }
    return true;
  }
  // Backward: seq[q..p-1] end up after i.
  for (int r = q; r < p; ++r) {
    const int x = seq[static_cast<size_t>(r)];
    if (pm.is_and_pred_of(x, i)) return false;
  }
  if (!pm.or_predecessors(i).empty() && !or_covered(pm, prefix_of(seq, q), i, 0, 0)) return false;
  return true;
}

bool precedence_transfer_across(const PrecedenceMatrix& pm, const std::vector<int>& src,
                                const std::vector<int>& dst, int p, int q) {
  const int i = src[static_cast<size_t>(p)];
  for (size_t r = static_cast<size_t>(p) + 1; r < src.size(); ++r) {
    const int x = src[r];
    if (pm.is_or_pred_of(i, x) && !or_covered(pm, prefix_of(src, static_cast<int>(r)), x, i, 0))
      return false;
  }
  for (int r = 0; r < q; ++r) {
    if (pm.is_and_pred_of(i, dst[static_cast<size_t>(r)])) return false;
  }
  for (size_t r = static_cast<size_t>(q); r < dst.size(); ++r) {
    if (pm.is_and_pred_of(dst[r], i)) return false;
  }
  if (!pm.or_predecessors(i).empty() && !or_covered(pm, prefix_of(dst, q), i, 0, 0)) return false;
  return true;
}

bool precedence_exchange_within(const PrecedenceMatrix& pm, const std::vector<int>& seq, int p,
                                int q) {
  const int i = seq[static_cast<size_t>(p)];
  const int j = seq[static_cast<size_t>(q)];
  if (pm.is_and_pred_of(i, j)) return false;
  for (int r = p + 1; r < q; ++r) {
    const int x = seq[static_cast<size_t>(r)];
    if (pm.is_and_pred_of(i, x)) return false;
    if (pm.is_and_pred_of(x, j)) return false;
    if (pm.is_or_pred_of(i, x) && !or_covered(pm, prefix_of(seq, r), x, i, j)) return false;
  }
  if (!pm.or_predecessors(j).empty() && !or_covered(pm, prefix_of(seq, p), j, 0, 0)) return false;
  return true;
}

bool precedence_exchange_across(const PrecedenceMatrix& pm, const std::vector<int>& sk,
                                const std::vector<int>& sk2, int p, int q) {
  const int i = sk[static_cast<size_t>(p)];
  const int j = sk2[static_cast<size_t>(q)];
  for (int r = 0; r < p; ++r) {
    if (pm.is_and_pred_of(j, sk[static_cast<size_t>(r)])) return false;
  }
  for (size_t r = static_cast<size_t>(p) + 1; r < sk.size(); ++r) {
    const int x = sk[r];
    if (pm.is_and_pred_of(x, j)) return false;
    if (pm.is_or_pred_of(i, x) && !or_covered(pm, prefix_of(sk, static_cast<int>(r)), x, i, j))
      return false;
  }
  if (!pm.or_predecessors(j).empty() && !or_covered(pm, prefix_of(sk, p), j, 0, 0)) return false;
  for (int r = 0; r < q; ++r) {
    if (pm.is_and_pred_of(i, sk2[static_cast<size_t>(r)])) return false;
  }
  for (size_t r = static_cast<size_t>(q) + 1; r < sk2.size(); ++r) {
    const int x = sk2[r];
    if (pm.is_and_pred_of(x, i)) return false;
    if (pm.is_or_pred_of(j, x) && !or_covered(pm, prefix_of(sk2, static_cast<int>(r)), x, j, i))
      return false;
  }
  if (!pm.or_predecessors(i).empty() && !or_covered(pm, prefix_of(sk2, q), i, 0, 0)) return false;
  return true;
}

bool precedence_insert_vehicle(const PrecedenceMatrix& pm, const std::vector<int>& seq, int p) {
  const int i = seq[static_cast<size_t>(p)];
  if (!pm.or_predecessors(i).empty()) return false;
  for (size_t r = static_cast<size_t>(p) + 1; r < seq.size(); ++r) {
    const int x = seq[r];
    if (pm.is_or_pred_of(i, x) && !or_covered(pm, prefix_of(seq, static_cast<int>(r)), x, i, 0))
      return false;
  }
  return true;
}

bool precedence_stack_insert(const PrecedenceMatrix& pm, const std::vector<int>& dst, int node,
                             int q) {
  for (int r = 0; r < q; ++r) {
    if (pm.is_and_pred_of(node, dst[static_cast<size_t>(r)])) return false;
  }
  for (size_t r = static_cast<size_t>(q); r < dst.size(); ++r) {
    if (pm.is_and_pred_of(dst[r], node)) return false;
  }
  if (!pm.or_predecessors(node).empty() && !or_covered(pm, prefix_of(dst, q), node, 0, 0))
    return false;
  return true;
}

// ---- stage 3 machinery -------------------------------------------------------

// A rebuilt route is a sequence of segments: relocated single nodes (computed
// directly) and blocks of the old sequence whose internal order is unchanged
// (settled through the push chains, with early exit once a push is absorbed).
struct Segment {
  bool is_node;
  int node;
  int begin, end;  // old-sequence block [begin, end)

  static Segment single(int n) { return {true, n, 0, 0}; }
  static Segment block(int b, int e) { return {false, 0, b, e}; }
};

bool eval_route_segments(const Instance& inst, const Route& old_route,
                         std::span<const Segment> segments, RoutePatch& patch) {
  const std::vector<int>& old_seq = old_route.seq;
  const std::vector<double>& old_arr = old_route.arrivals;

  patch.seq.clear();
  patch.arrivals.clear();
  patch.cum_demand = 0.0;

  int prev = inst.depot();
  double departure = 0.0;
  auto push_node = [&](int c, double arrival) {
    patch.seq.push_back(c);
    patch.arrivals.push_back(arrival);
    patch.cum_demand += inst.demand(c);
    departure = arrival + inst.service(c);
    prev = c;
  };

  for (const Segment& seg : segments) {
    if (seg.is_node) {
      const double a = std::max(inst.early(seg.node), departure + inst.travel(prev, seg.node));
      if (a > inst.late(seg.node) + kEps) return false;
      push_node(seg.node, a);
      continue;
    }
    if (seg.begin >= seg.end) continue;
    const int head = old_seq[static_cast<size_t>(seg.begin)];
    const double head_arrival = std::max(inst.early(head), departure + inst.travel(prev, head));
    if (head_arrival > inst.late(head) + kEps) return false;
    const double old_head = old_arr[static_cast<size_t>(seg.begin)];
    const std::span<const int> nodes{old_seq.data() + seg.begin,
                                     static_cast<size_t>(seg.end - seg.begin)};
    const std::span<const double> arrs{old_arr.data() + seg.begin,
                                       static_cast<size_t>(seg.end - seg.begin)};
    if (head_arrival > old_head) {
      const ForwardPush push = push_forward_chain(inst, nodes, arrs, head_arrival - old_head);
      if (!push.feasible) return false;
      for (size_t r = 0; r < nodes.size(); ++r) push_node(nodes[r], arrs[r] + push.deltas[r]);
    } else if (head_arrival < old_head) {
      const std::vector<double> deltas =
          push_backward_chain(inst, nodes, arrs, old_head - head_arrival);
      for (size_t r = 0; r < nodes.size(); ++r) push_node(nodes[r], arrs[r] - deltas[r]);
    } else {
      for (size_t r = 0; r < nodes.size(); ++r) push_node(nodes[r], arrs[r]);
    }
  }

  patch.completion =
      patch.seq.empty() ? 0.0 : departure + inst.travel(prev, inst.dummy_depot());
  if (patch.completion > inst.horizon() + kEps) return false;
  return true;
}

std::vector<Segment> removal_segments(const std::vector<int>& seq, int p) {
  return {Segment::block(0, p), Segment::block(p + 1, static_cast<int>(seq.size()))};
}

std::vector<Segment> insertion_segments(const std::vector<int>& seq, int node, int q) {
  return {Segment::block(0, q), Segment::single(node),
          Segment::block(q, static_cast<int>(seq.size()))};
}

}  // namespace

std::vector<double> push_backward_chain(const Instance& inst, std::span<const int> nodes,
                                        std::span<const double> old_arrivals, double b0) {
  assert(b0 >= 0.0);
  std::vector<double> deltas(nodes.size(), 0.0);
  if (nodes.empty()) return deltas;
  double b = b0;
  deltas[0] = b;
  for (size_t r = 1; r < nodes.size() && b > 0.0; ++r) {
    b = std::min(b, old_arrivals[r] - inst.early(nodes[r]));
    if (b <= 0.0) break;
    deltas[r] = b;
  }
  return deltas;
}

ForwardPush push_forward_chain(const Instance& inst, std::span<const int> nodes,
                               std::span<const double> old_arrivals, double f0) {
  assert(f0 >= 0.0);
  ForwardPush out;
  out.deltas.assign(nodes.size(), 0.0);
  if (nodes.empty()) {
    out.feasible = true;
    return out;
  }
  double f = f0;
  out.deltas[0] = f;
  if (old_arrivals[0] + f > inst.late(nodes[0]) + kEps) return out;
  for (size_t r = 1; r < nodes.size() && f > 0.0; ++r) {
    const double waiting = old_arrivals[r] - (old_arrivals[r - 1] + inst.service(nodes[r - 1]) +
                                              inst.travel(nodes[r - 1], nodes[r]));
    f = std::max(f - waiting, 0.0);
    if (f <= 0.0) break;
    if (old_arrivals[r] + f > inst.late(nodes[r]) + kEps) return out;
    out.deltas[r] = f;
  }
  out.feasible = true;
  return out;
}

bool stage1_capacity_horizon(const Instance& inst, const Solution& sol, const Move& move) {
  const double cap = inst.capacity() + kEps;
  switch (move.kind) {
    case MoveKind::TransferWithin:
    case MoveKind::ExchangeWithin:
      return true;  // per-route load unchanged
    case MoveKind::TransferAcross: {
      const double q = inst.demand(sol.routes[static_cast<size_t>(move.route)]
                                       .seq[static_cast<size_t>(move.pos)]);
      return sol.routes[static_cast<size_t>(move.route2)].cum_demand + q <= cap;
    }
    case MoveKind::ExchangeAcross: {
      const Route& a = sol.routes[static_cast<size_t>(move.route)];
      const Route& b = sol.routes[static_cast<size_t>(move.route2)];
      const double qi = inst.demand(a.seq[static_cast<size_t>(move.pos)]);
      const double qj = inst.demand(b.seq[static_cast<size_t>(move.pos2)]);
      return a.cum_demand - qi + qj <= cap && b.cum_demand - qj + qi <= cap;
    }
    case MoveKind::InsertVehicle: {
      // Relocating a singleton's only node swaps one vehicle for another;
      // otherwise the move adds one to the fleet.
      const auto& src = sol.routes[static_cast<size_t>(move.route)].seq;
      const int net = src.size() == 1 ? 0 : 1;
      if (sol.vehicle_number() + net > inst.max_vehicles()) return false;
      return inst.demand(src[static_cast<size_t>(move.pos)]) <= cap;
    }
    case MoveKind::StackInsert:
      return sol.routes[static_cast<size_t>(move.route2)].cum_demand + inst.demand(move.node) <=
             cap;
  }
  return false;
}

bool stage2_precedence(const Instance& inst, const Solution& sol, const Move& move) {
  const PrecedenceMatrix& pm = inst.pm();
  switch (move.kind) {
    case MoveKind::TransferWithin:
      return precedence_transfer_within(pm, sol.routes[static_cast<size_t>(move.route)].seq,
                                        move.pos, move.pos2);
    case MoveKind::TransferAcross:
      return precedence_transfer_across(pm, sol.routes[static_cast<size_t>(move.route)].seq,
                                        sol.routes[static_cast<size_t>(move.route2)].seq, move.pos,
                                        move.pos2);
    case MoveKind::ExchangeWithin:
      return precedence_exchange_within(pm, sol.routes[static_cast<size_t>(move.route)].seq,
                                        move.pos, move.pos2);
    case MoveKind::ExchangeAcross:
      return precedence_exchange_across(pm, sol.routes[static_cast<size_t>(move.route)].seq,
                                        sol.routes[static_cast<size_t>(move.route2)].seq, move.pos,
                                        move.pos2);
    case MoveKind::InsertVehicle:
      return precedence_insert_vehicle(pm, sol.routes[static_cast<size_t>(move.route)].seq,
                                       move.pos);
    case MoveKind::StackInsert:
      return precedence_stack_insert(pm, sol.routes[static_cast<size_t>(move.route2)].seq,
                                     move.node, move.pos2);
  }
  return false;
}

bool stage3_time_windows(const Instance& inst, const Solution& sol, const Move& move,
                         MoveOutcome& outcome) {
  outcome.patches.clear();
  outcome.new_route.reset();

  auto eval = [&](int route_index, const std::vector<Segment>& segments) {
    RoutePatch patch;
    patch.route = route_index;
    if (!eval_route_segments(inst, sol.routes[static_cast<size_t>(route_index)], segments, patch))
      return false;
    outcome.patches.push_back(std::move(patch));
    return true;
  };

  switch (move.kind) {
    case MoveKind::TransferWithin: {
      const std::vector<int>& seq = sol.routes[static_cast<size_t>(move.route)].seq;
      const int i = seq[static_cast<size_t>(move.pos)];
      const int p = move.pos, q = move.pos2;
      std::vector<Segment> segs;
      if (q >= p) {
        segs = {Segment::block(0, p), Segment::block(p + 1, q + 1), Segment::single(i),
                Segment::block(q + 1, static_cast<int>(seq.size()))};
      } else {
        segs = {Segment::block(0, q), Segment::single(i), Segment::block(q, p),
                Segment::block(p + 1, static_cast<int>(seq.size()))};
      }
      return eval(move.route, segs);
    }
    case MoveKind::TransferAcross: {
      const std::vector<int>& src = sol.routes[static_cast<size_t>(move.route)].seq;
      const int i = src[static_cast<size_t>(move.pos)];
      if (!eval(move.route, removal_segments(src, move.pos))) return false;
      return eval(move.route2,
                  insertion_segments(sol.routes[static_cast<size_t>(move.route2)].seq, i,
                                     move.pos2));
    }
    case MoveKind::ExchangeWithin: {
      const std::vector<int>& seq = sol.routes[static_cast<size_t>(move.route)].seq;
      const int i = seq[static_cast<size_t>(move.pos)];
      const int j = seq[static_cast<size_t>(move.pos2)];
      const std::vector<Segment> segs = {
          Segment::block(0, move.pos), Segment::single(j), Segment::block(move.pos + 1, move.pos2),
          Segment::single(i), Segment::block(move.pos2 + 1, static_cast<int>(seq.size()))};
      return eval(move.route, segs);
    }
    case MoveKind::ExchangeAcross: {
      const std::vector<int>& sk = sol.routes[static_cast<size_t>(move.route)].seq;
      const std::vector<int>& sk2 = sol.routes[static_cast<size_t>(move.route2)].seq;
      const int i = sk[static_cast<size_t>(move.pos)];
      const int j = sk2[static_cast<size_t>(move.pos2)];
      const std::vector<Segment> segs_k = {Segment::block(0, move.pos), Segment::single(j),
                                           Segment::block(move.pos + 1, static_cast<int>(sk.size()))};
      const std::vector<Segment> segs_k2 = {
          Segment::block(0, move.pos2), Segment::single(i),
          Segment::block(move.pos2 + 1, static_cast<int>(sk2.size()))};
      return eval(move.route, segs_k) && eval(move.route2, segs_k2);
    }
    case MoveKind::InsertVehicle: {
      const std::vector<int>& src = sol.routes[static_cast<size_t>(move.route)].seq;
      const int i = src[static_cast<size_t>(move.pos)];
      if (!eval(move.route, removal_segments(src, move.pos))) return false;
      const double arrival = std::max(inst.early(i), inst.travel(inst.depot(), i));
      if (arrival > inst.late(i) + kEps) return false;
      RoutePatch fresh;
      fresh.route = sol.vehicle_number();
      fresh.seq = {i};
      fresh.arrivals = {arrival};
      fresh.cum_demand = inst.demand(i);
      fresh.completion = arrival + inst.service(i) + inst.travel(i, inst.dummy_depot());
      if (fresh.completion > inst.horizon() + kEps) return false;
      outcome.new_route = std::move(fresh);
      return true;
    }
    case MoveKind::StackInsert:
      return eval(move.route2,
                  insertion_segments(sol.routes[static_cast<size_t>(move.route2)].seq, move.node,
                                     move.pos2));
  }
  return false;
}

MoveOutcome check_move(const Instance& inst, const Solution& sol, const Move& move,
                       MoveEvalStats* stats) {
  MoveOutcome outcome;
  if (stats) ++stats->stage1;
  if (!stage1_capacity_horizon(inst, sol, move)) return outcome;
  if (stats) ++stats->stage2;
  if (!stage2_precedence(inst, sol, move)) return outcome;
  if (stats) ++stats->stage3;
  if (!stage3_time_windows(inst, sol, move, outcome)) {
    outcome.patches.clear();
    outcome.new_route.reset();
    return outcome;
  }

  outcome.feasible = true;
  outcome.stack_node = move.kind == MoveKind::StackInsert ? move.node : -1;
  double delta = 0.0;
  for (const RoutePatch& patch : outcome.patches)
    delta += patch.completion - sol.routes[static_cast<size_t>(patch.route)].completion;
  if (outcome.new_route) delta += outcome.new_route->completion;
  outcome.delta_objective = delta;
  return outcome;
}

void apply_move(const Instance& /*inst*/, Solution& sol, const Move& /*move*/,
                const MoveOutcome& outcome) {
  assert(outcome.feasible);
  for (const RoutePatch& patch : outcome.patches) {
    Route& r = sol.routes[static_cast<size_t>(patch.route)];
    r.seq = patch.seq;
    r.arrivals = patch.arrivals;
    r.cum_demand = patch.cum_demand;
    r.completion = patch.completion;
  }
  if (outcome.new_route) {
    Route fresh;
    fresh.seq = outcome.new_route->seq;
    fresh.arrivals = outcome.new_route->arrivals;
    fresh.cum_demand = outcome.new_route->cum_demand;
    fresh.completion = outcome.new_route->completion;
    sol.routes.push_back(std::move(fresh));
  }
  if (outcome.stack_node >= 0) {
    sol.stack.erase(std::find(sol.stack.begin(), sol.stack.end(), outcome.stack_node));
  }
  std::erase_if(sol.routes, [](const Route& r) { return r.seq.empty(); });
  for (size_t k = 0; k < sol.routes.size(); ++k) sol.routes[k].vehicle = static_cast<int>(k);
}

}  // namespace avrp
