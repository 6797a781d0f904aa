#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "avrp/exact.hpp"

namespace avrp {

namespace {

double now_sec() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct BnbState {
  const Instance* inst;
  ExactBudget budget;
  double start;

  std::vector<std::vector<int>> routes;  // last one open
  std::vector<double> route_demand;
  std::vector<double> route_departure;   // departure time after last node
  std::vector<int> route_last;           // last node id (depot when empty)
  double closed_completion = 0.0;        // completions of all but the open route
  std::vector<char> assigned;
  std::vector<int> unassigned;           // ascending ids
  double unassigned_service = 0.0;

  bool aborted = false;
  bool has_incumbent = false;
  double incumbent = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> incumbent_routes;
  double min_abandoned_bound = std::numeric_limits<double>::infinity();
  uint64_t nodes = 0;
};

double open_return(const BnbState& s) {
  if (s.routes.empty() || s.routes.back().empty()) return 0.0;
  return s.route_departure.back() + s.inst->travel(s.route_last.back(), s.inst->dummy_depot());
}

double lower_bound(const BnbState& s) {
  return s.closed_completion + open_return(s) + s.unassigned_service;
}

// Appending c to the open route: capacity, window, horizon, AND/OR screens.
// Every screen is monotone under further appends, so a failure prunes the
// whole subtree.
bool append_feasible(const BnbState& s, int c, double& arrival_out) {
  const Instance& inst = *s.inst;
  const auto& open = s.routes.back();
  if (s.route_demand.back() + inst.demand(c) > inst.capacity() + kEps) return false;
  const double arrival =
      std::max(inst.early(c), s.route_departure.back() + inst.travel(s.route_last.back(), c));
  if (arrival > inst.late(c) + kEps) return false;
  if (arrival + inst.service(c) + inst.travel(c, inst.dummy_depot()) > inst.horizon() + kEps)
    return false;
  for (const int x : open) {
    if (inst.pm().is_and_pred_of(c, x)) return false;
  }
  const auto& ors = inst.pm().or_predecessors(c);
  if (!ors.empty()) {
    bool covered = false;
    for (const int o : ors) {
      if (std::find(open.begin(), open.end(), o) != open.end()) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  arrival_out = arrival;
  return true;
}

void record_incumbent(BnbState& s) {
  const double total = s.closed_completion + open_return(s);
  if (!s.has_incumbent || total < s.incumbent) {
    s.has_incumbent = true;
    s.incumbent = total;
    s.incumbent_routes = s.routes;
    if (!s.incumbent_routes.empty() && s.incumbent_routes.back().empty())
      s.incumbent_routes.pop_back();
  }
}

void search(BnbState& s) {
  ++s.nodes;
  if ((s.nodes & 0x3ff) == 0 && now_sec() - s.start > s.budget.time_limit_sec) s.aborted = true;
  if (s.nodes > s.budget.node_limit) s.aborted = true;

  const double bound = lower_bound(s);
  if (s.aborted) {
    s.min_abandoned_bound = std::min(s.min_abandoned_bound, bound);
    return;
  }
  if (s.has_incumbent && bound >= s.incumbent) return;

  if (s.unassigned.empty()) {
    record_incumbent(s);
    return;
  }

  const Instance& inst = *s.inst;

  // Branch 1: extend the open route.
  const std::vector<int> candidates = s.unassigned;  // snapshot; recursion edits the live list
  for (const int c : candidates) {
    double arrival = 0.0;
    if (!append_feasible(s, c, arrival)) continue;

    const double saved_departure = s.route_departure.back();
    const int saved_last = s.route_last.back();
    s.routes.back().push_back(c);
    s.route_demand.back() += inst.demand(c);
    s.route_departure.back() = arrival + inst.service(c);
    s.route_last.back() = c;
    s.assigned[static_cast<size_t>(c)] = 1;
    s.unassigned.erase(std::find(s.unassigned.begin(), s.unassigned.end(), c));
    s.unassigned_service -= inst.service(c);

    search(s);

    s.unassigned_service += inst.service(c);
    s.unassigned.insert(std::upper_bound(s.unassigned.begin(), s.unassigned.end(), c), c);
    s.assigned[static_cast<size_t>(c)] = 0;
    s.routes.back().pop_back();
    s.route_demand.back() -= inst.demand(c);
    s.route_departure.back() = saved_departure;
    s.route_last.back() = saved_last;
    if (s.aborted) return;
  }

  // Branch 2: close the open route and start the next vehicle. First
  // customers increase across routes, killing route-order symmetry.
  if (!s.routes.back().empty() && static_cast<int>(s.routes.size()) < inst.max_vehicles()) {
    const double completed =
        s.route_departure.back() + inst.travel(s.route_last.back(), inst.dummy_depot());
    const int prev_first = s.routes.back().front();

    s.closed_completion += completed;
    s.routes.emplace_back();
    s.route_demand.push_back(0.0);
    s.route_departure.push_back(0.0);
    s.route_last.push_back(inst.depot());

    const std::vector<int> firsts = s.unassigned;
    for (const int c : firsts) {
      if (c <= prev_first) continue;
      double arrival = 0.0;
      if (!append_feasible(s, c, arrival)) continue;

      s.routes.back().push_back(c);
      s.route_demand.back() = inst.demand(c);
      s.route_departure.back() = arrival + inst.service(c);
      s.route_last.back() = c;
      s.assigned[static_cast<size_t>(c)] = 1;
      s.unassigned.erase(std::find(s.unassigned.begin(), s.unassigned.end(), c));
      s.unassigned_service -= inst.service(c);

      search(s);

      s.unassigned_service += inst.service(c);
      s.unassigned.insert(std::upper_bound(s.unassigned.begin(), s.unassigned.end(), c), c);
      s.assigned[static_cast<size_t>(c)] = 0;
      s.routes.back().clear();
      s.route_demand.back() = 0.0;
      s.route_departure.back() = 0.0;
      s.route_last.back() = inst.depot();
      if (s.aborted) break;
    }

    s.routes.pop_back();
    s.route_demand.pop_back();
    s.route_departure.pop_back();
    s.route_last.pop_back();
    s.closed_completion -= completed;
  }
}

}  // namespace

const char* exact_status_name(ExactStatus status) {
  switch (status) {
    case ExactStatus::Optimal: return "OPTIMAL";
    case ExactStatus::BoundOnly: return "BOUND_ONLY";
    case ExactStatus::Infeasible: return "INFEASIBLE";
  }
  return "UNKNOWN";
}

ExactResult solve_exact(const Instance& inst, const ExactBudget& budget) {
  BnbState s;
  s.inst = &inst;
  s.budget = budget;
  s.start = now_sec();
  s.routes.emplace_back();
  s.route_demand.push_back(0.0);
  s.route_departure.push_back(0.0);
  s.route_last.push_back(inst.depot());
  s.assigned.assign(static_cast<size_t>(inst.customer_count()) + 1, 0);
  for (int c = 1; c <= inst.customer_count(); ++c) {
    s.unassigned.push_back(c);
    s.unassigned_service += inst.service(c);
  }

  search(s);

  ExactResult result;
  result.nodes_explored = s.nodes;
  result.runtime_sec = now_sec() - s.start;
  if (s.has_incumbent) {
    Solution sol;
    for (const auto& seq : s.incumbent_routes) {
      Route r;
      r.vehicle = static_cast<int>(sol.routes.size());
      r.seq = seq;
      refresh_route(inst, r);
      sol.routes.push_back(std::move(r));
    }
    result.solution = std::move(sol);
    result.objective = s.incumbent;
  }
  if (!s.aborted) {
    result.status = s.has_incumbent ? ExactStatus::Optimal : ExactStatus::Infeasible;
    result.bound = s.has_incumbent ? s.incumbent : 0.0;
  } else {
    result.status = ExactStatus::BoundOnly;
    result.bound = std::min(s.min_abandoned_bound, s.incumbent);
  }
  return result;
}

}  // namespace avrp
