#include "avrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace avrp {

PrecedenceMatrix::PrecedenceMatrix(int customer_count, const std::vector<RelationTriple>& triples)
    : n_(customer_count) {
  if (n_ < 0) throw std::invalid_argument("precedence matrix: negative customer count");
  upper_.assign(static_cast<size_t>(n_) * static_cast<size_t>(std::max(0, n_ - 1)) / 2,
                Relation::None);
  and_pred_.assign(static_cast<size_t>(n_) + 1, {});
  or_pred_.assign(static_cast<size_t>(n_) + 1, {});
  succ_.assign(static_cast<size_t>(n_) + 1, {});
  for (const auto& [i, j, rel] : triples) {
    if (i < 1 || j <= i || j > n_) {
      std::ostringstream msg;
      msg << "precedence matrix: relation (" << i << ", " << j << ") is not upper triangular";
      throw std::invalid_argument(msg.str());
    }
    if (rel == Relation::None) continue;
    Relation& slot = upper_[index_of(i, j)];
    if (slot != Relation::None) {
      std::ostringstream msg;
      msg << "precedence matrix: duplicate relation (" << i << ", " << j << ")";
      throw std::invalid_argument(msg.str());
    }
    slot = rel;
    ++count_;
    (rel == Relation::And ? and_pred_ : or_pred_)[static_cast<size_t>(j)].push_back(i);
    succ_[static_cast<size_t>(i)].emplace_back(j, rel);
  }
  for (int j = 1; j <= n_; ++j) {
    std::sort(and_pred_[static_cast<size_t>(j)].begin(), and_pred_[static_cast<size_t>(j)].end());
    std::sort(or_pred_[static_cast<size_t>(j)].begin(), or_pred_[static_cast<size_t>(j)].end());
    std::sort(succ_[static_cast<size_t>(j)].begin(), succ_[static_cast<size_t>(j)].end());
  }
}

Relation PrecedenceMatrix::relation(int i, int j) const {
  if (i < 1 || j <= i || j > n_) throw std::out_of_range("precedence matrix: relation(i, j) needs 1 <= i < j <= n");
  return upper_[index_of(i, j)];
}

std::vector<RelationTriple> PrecedenceMatrix::triples() const {
  std::vector<RelationTriple> out;
  out.reserve(count_);
  for (int j = 2; j <= n_; ++j) {
    for (int i = 1; i < j; ++i) {
      const Relation rel = upper_[index_of(i, j)];
      if (rel != Relation::None) out.emplace_back(i, j, rel);
    }
  }
  return out;
}

Instance Instance::build(Node depot, std::vector<Node> customers, double horizon, double capacity,
                         int max_vehicles, PrecedenceMatrix pm, InstanceMeta meta) {
  const int n = static_cast<int>(customers.size());
  if (horizon < 0.0) throw std::invalid_argument("instance: negative horizon");
  if (capacity < 0.0) throw std::invalid_argument("instance: negative capacity");
  if (max_vehicles < 1) throw std::invalid_argument("instance: max vehicles must be positive");
  if (pm.customer_count() != n)
    throw std::invalid_argument("instance: precedence matrix size does not match customer count");

  Instance inst;
  inst.n_ = n;
  inst.horizon_ = horizon;
  inst.capacity_ = capacity;
  inst.max_vehicles_ = max_vehicles;
  inst.pm_ = std::move(pm);
  inst.meta_ = std::move(meta);
  inst.meta_.n = n;

  depot.id = 0;
  depot.demand = 0.0;
  depot.service = 0.0;
  depot.early = 0.0;
  depot.late = horizon;

  inst.nodes_.reserve(static_cast<size_t>(n) + 2);
  inst.nodes_.push_back(depot);
  for (int i = 0; i < n; ++i) {
    Node& c = customers[static_cast<size_t>(i)];
    if (c.id != i + 1) throw std::invalid_argument("instance: customers must be numbered 1..n in order");
    if (c.demand < 0.0 || c.service < 0.0)
      throw std::invalid_argument("instance: negative demand or service time");
    if (c.early < 0.0 || c.early > c.late + kEps || c.late > horizon + kEps) {
      std::ostringstream msg;
      msg << "instance: node " << c.id << " violates 0 <= e <= l <= T";
      throw std::invalid_argument(msg.str());
    }
    inst.nodes_.push_back(c);
  }
  Node dummy = depot;
  dummy.id = n + 1;
  inst.nodes_.push_back(dummy);

  const size_t m = static_cast<size_t>(n) + 2;
  inst.travel_.assign(m * m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      const double dx = inst.nodes_[i].x - inst.nodes_[j].x;
      const double dy = inst.nodes_[i].y - inst.nodes_[j].y;
      const double d = std::sqrt(dx * dx + dy * dy);
      inst.travel_[i * m + j] = d;
      inst.travel_[j * m + i] = d;
    }
  }
  return inst;
}

RouteTiming compute_route_timing(const Instance& inst, std::span<const int> seq) {
  RouteTiming t;
  t.arrivals.reserve(seq.size());
  int prev = inst.depot();
  double departure = 0.0;
  for (const int c : seq) {
    const double arrival = std::max(inst.early(c), departure + inst.travel(prev, c));
    t.arrivals.push_back(arrival);
    t.demand += inst.demand(c);
    departure = arrival + inst.service(c);
    prev = c;
  }
  t.completion = seq.empty() ? 0.0 : departure + inst.travel(prev, inst.dummy_depot());
  return t;
}

void refresh_route(const Instance& inst, Route& route) {
  RouteTiming t = compute_route_timing(inst, route.seq);
  route.arrivals = std::move(t.arrivals);
  route.cum_demand = t.demand;
  route.completion = t.completion;
}

double objective(const Solution& sol) {
  double total = 0.0;
  for (const Route& r : sol.routes) total += r.completion;
  return total;
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateNode: return "duplicate node";
    case ViolationKind::MissingNode: return "missing node";
    case ViolationKind::StackOverlap: return "node both routed and stacked";
    case ViolationKind::Capacity: return "capacity";
    case ViolationKind::TimeWindow: return "time window";
    case ViolationKind::Horizon: return "horizon";
    case ViolationKind::VehicleCount: return "vehicle count";
    case ViolationKind::AndOrder: return "AND precedence";
    case ViolationKind::OrUnsatisfied: return "OR unsatisfied";
  }
  return "unknown";
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << violation_kind_name(v.kind);
    if (v.route >= 0) out << " route=" << v.route;
    if (v.node >= 0) out << " node=" << v.node;
    if (v.amount != 0.0) out << " amount=" << v.amount;
    out << '\n';
  }
  return out.str();
}

ValidationReport validate(const Instance& inst, const Solution& sol) {
  ValidationReport report;
  const int n = inst.customer_count();

  std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
  for (size_t k = 0; k < sol.routes.size(); ++k) {
    for (const int c : sol.routes[k].seq) {
      if (c < 1 || c > n) {
        report.violations.push_back({ViolationKind::MissingNode, static_cast<int>(k), c, 0.0});
        continue;
      }
      if (++seen[static_cast<size_t>(c)] > 1)
        report.violations.push_back({ViolationKind::DuplicateNode, static_cast<int>(k), c, 0.0});
    }
  }
  for (const int c : sol.stack) {
    if (c < 1 || c > n) continue;
    if (seen[static_cast<size_t>(c)] > 0)
      report.violations.push_back({ViolationKind::StackOverlap, -1, c, 0.0});
    else
      seen[static_cast<size_t>(c)] = -1;  // stacked, not routed
  }
  for (int c = 1; c <= n; ++c) {
    if (seen[static_cast<size_t>(c)] == 0)
      report.violations.push_back({ViolationKind::MissingNode, -1, c, 0.0});
  }

  if (sol.vehicle_number() > inst.max_vehicles()) {
    report.violations.push_back({ViolationKind::VehicleCount, -1, -1,
                                 static_cast<double>(sol.vehicle_number() - inst.max_vehicles())});
  }

  const PrecedenceMatrix& pm = inst.pm();
  for (size_t k = 0; k < sol.routes.size(); ++k) {
    const Route& r = sol.routes[k];
    const RouteTiming timing = compute_route_timing(inst, r.seq);

    if (timing.demand > inst.capacity() + kEps)
      report.violations.push_back(
          {ViolationKind::Capacity, static_cast<int>(k), -1, timing.demand - inst.capacity()});
    if (timing.completion > inst.horizon() + kEps)
      report.violations.push_back(
          {ViolationKind::Horizon, static_cast<int>(k), -1, timing.completion - inst.horizon()});

    for (size_t p = 0; p < r.seq.size(); ++p) {
      const int c = r.seq[p];
      if (c < 1 || c > n) continue;
      if (timing.arrivals[p] > inst.late(c) + kEps)
        report.violations.push_back(
            {ViolationKind::TimeWindow, static_cast<int>(k), c, timing.arrivals[p] - inst.late(c)});
    }

    // Positions within this route, for precedence checks.
    std::vector<int> pos(static_cast<size_t>(n) + 1, -1);
    for (size_t p = 0; p < r.seq.size(); ++p) {
      const int c = r.seq[p];
      if (c >= 1 && c <= n) pos[static_cast<size_t>(c)] = static_cast<int>(p);
    }
    for (size_t p = 0; p < r.seq.size(); ++p) {
      const int c = r.seq[p];
      if (c < 1 || c > n) continue;
      for (const int a : pm.and_predecessors(c)) {
        const int ap = pos[static_cast<size_t>(a)];
        if (ap >= 0 && ap > static_cast<int>(p))
          report.violations.push_back({ViolationKind::AndOrder, static_cast<int>(k), c, 0.0});
      }
      const auto& ors = pm.or_predecessors(c);
      if (!ors.empty()) {
        bool satisfied = false;
        for (const int o : ors) {
          const int op = pos[static_cast<size_t>(o)];
          if (op >= 0 && op < static_cast<int>(p)) {
            satisfied = true;
            break;
          }
        }
        if (!satisfied)
          report.violations.push_back({ViolationKind::OrUnsatisfied, static_cast<int>(k), c, 0.0});
      }
    }
  }
  return report;
}

}  // namespace avrp
