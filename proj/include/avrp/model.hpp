#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace avrp {

// Absolute tolerance for every time/load comparison in the toolkit.
inline constexpr double kEps = 1e-9;

// Global node indexing: 0 = depot, 1..n = customers, n+1 = dummy depot
// (same coordinates as the depot, terminates every route).
struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
  double service = 0.0;
  double early = 0.0;
  double late = 0.0;
};

enum class Relation : uint8_t { None = 0, And = 1, Or = 2 };

using RelationTriple = std::tuple<int, int, Relation>;

// Strictly upper-triangular store of pairwise AND/OR precedence relations
// between customers: relation(i, j) is defined for 1 <= i < j <= n, so a
// predecessor always carries a smaller customer index and the relation graph
// is acyclic by construction. Immutable after construction.
class PrecedenceMatrix {
 public:
  PrecedenceMatrix() = default;
  PrecedenceMatrix(int customer_count, const std::vector<RelationTriple>& triples);

  int customer_count() const { return n_; }

  Relation relation(int i, int j) const;  // requires 1 <= i < j <= n

  bool is_and_pred_of(int i, int j) const { return i < j && relation(i, j) == Relation::And; }
  bool is_or_pred_of(int i, int j) const { return i < j && relation(i, j) == Relation::Or; }

  const std::vector<int>& and_predecessors(int j) const { return and_pred_[static_cast<size_t>(j)]; }
  const std::vector<int>& or_predecessors(int j) const { return or_pred_[static_cast<size_t>(j)]; }
  const std::vector<std::pair<int, Relation>>& successors(int i) const {
    return succ_[static_cast<size_t>(i)];
  }

  size_t relation_count() const { return count_; }

  // All stored relations ordered by (j, i); canonical form used by the IO layer.
  std::vector<RelationTriple> triples() const;

 private:
  size_t index_of(int i, int j) const {
    return static_cast<size_t>(j - 1) * static_cast<size_t>(j - 2) / 2 + static_cast<size_t>(i - 1);
  }

  int n_ = 0;
  size_t count_ = 0;
  std::vector<Relation> upper_;
  std::vector<std::vector<int>> and_pred_, or_pred_;
  std::vector<std::vector<std::pair<int, Relation>>> succ_;
};

struct InstanceMeta {
  std::string source_name;  // e.g. "C201"
  std::string type;         // R2 | C2 | RC2
  int n = 0;
  double tau = 0.0;
  uint64_t seed = 0;
};

class Instance {
 public:
  // customers must carry ids 1..n in order; the depot supplies coordinates for
  // node 0 and the dummy depot n+1. Throws std::invalid_argument when an
  // invariant is broken (0 <= e <= l <= T, zero depot demand/service, ...).
  static Instance build(Node depot, std::vector<Node> customers, double horizon, double capacity,
                        int max_vehicles, PrecedenceMatrix pm, InstanceMeta meta = {});

  int customer_count() const { return n_; }
  int node_count() const { return n_ + 2; }
  int depot() const { return 0; }
  int dummy_depot() const { return n_ + 1; }

  const Node& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
  double demand(int i) const { return nodes_[static_cast<size_t>(i)].demand; }
  double service(int i) const { return nodes_[static_cast<size_t>(i)].service; }
  double early(int i) const { return nodes_[static_cast<size_t>(i)].early; }
  double late(int i) const { return nodes_[static_cast<size_t>(i)].late; }

  double travel(int i, int j) const {
    return travel_[static_cast<size_t>(i) * static_cast<size_t>(n_ + 2) + static_cast<size_t>(j)];
  }

  double horizon() const { return horizon_; }
  double capacity() const { return capacity_; }
  int max_vehicles() const { return max_vehicles_; }
  const PrecedenceMatrix& pm() const { return pm_; }
  const InstanceMeta& meta() const { return meta_; }

 private:
  Instance() = default;

  int n_ = 0;
  std::vector<Node> nodes_;    // 0, 1..n, n+1
  std::vector<double> travel_;  // (n+2)^2, symmetric Euclidean
  double horizon_ = 0.0;
  double capacity_ = 0.0;
  int max_vehicles_ = 0;
  PrecedenceMatrix pm_;
  InstanceMeta meta_;
};

// One vehicle trip. seq holds customer ids (depot endpoints implicit),
// arrivals the per-position service-start times:
//   arrivals[0]   = max(e_c0, t(0, c0))
//   arrivals[p+1] = max(e_cp+1, arrivals[p] + s_cp + t(cp, cp+1))
// completion is the arrival back at the (dummy) depot.
struct Route {
  int vehicle = 0;
  std::vector<int> seq;
  std::vector<double> arrivals;
  double cum_demand = 0.0;
  double completion = 0.0;
};

struct Solution {
  std::vector<Route> routes;
  std::vector<int> stack;  // unassigned customers awaiting reinsertion

  int vehicle_number() const { return static_cast<int>(routes.size()); }
  bool complete(const Instance& inst) const {
    return stack.empty() && vehicle_number() <= inst.max_vehicles();
  }
};

struct RouteTiming {
  std::vector<double> arrivals;
  double completion = 0.0;
  double demand = 0.0;
};

RouteTiming compute_route_timing(const Instance& inst, std::span<const int> seq);

// Recompute a route's cached arrivals / demand / completion from its seq.
void refresh_route(const Instance& inst, Route& route);

// Total completion time, Sum over routes of completion; empty routes and
// unused vehicles contribute 0.
double objective(const Solution& sol);

enum class ViolationKind {
  DuplicateNode,
  MissingNode,
  StackOverlap,
  Capacity,
  TimeWindow,
  Horizon,
  VehicleCount,
  AndOrder,
  OrUnsatisfied,
};

struct Violation {
  ViolationKind kind;
  int route = -1;  // -1 when not route-specific
  int node = -1;
  double amount = 0.0;  // excess / slack magnitude where meaningful
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
  std::string to_string() const;
};

const char* violation_kind_name(ViolationKind kind);

// Full from-scratch check of a solution: node partition, capacity, time
// windows, horizon, vehicle count, AND rule (co-assigned AND-predecessors
// precede their successor) and OR rule (a customer with a non-empty OR set
// needs at least one OR-predecessor earlier on its own route). Violations are
// data, not failures; an empty report means feasible.
ValidationReport validate(const Instance& inst, const Solution& sol);

}  // namespace avrp
