#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avrp/model.hpp"

namespace avrp {

enum class ExactStatus { Optimal, BoundOnly, Infeasible };

struct ExactBudget {
  double time_limit_sec = 60.0;
  uint64_t node_limit = 200'000'000;
};

struct ExactResult {
  ExactStatus status = ExactStatus::Infeasible;
  double objective = 0.0;  // incumbent value when one exists
  double bound = 0.0;      // lower bound on the optimum; equals objective when Optimal
  std::optional<Solution> solution;
  uint64_t nodes_explored = 0;
  double runtime_sec = 0.0;
};

// Depth-first branch-and-bound over route assignments and sequences: routes
// are extended one appended customer at a time; pruning covers capacity,
// window reachability, horizon, AND/OR rules and route-order symmetry
// (a vehicle opens only after its predecessor, first customers increasing).
// The bound adds every unassigned service time to the committed completion
// and return legs, which is admissible because appending a customer never
// shrinks a route's completion time. Intended for n <= 12; larger instances
// may come back BoundOnly.
ExactResult solve_exact(const Instance& inst, const ExactBudget& budget = {});

const char* exact_status_name(ExactStatus status);

// ---- direct MILP view -------------------------------------------------------

struct MilpAssignment {
  int n = 0;  // customers; node ids run 0..n+1
  int k = 0;  // vehicles
  std::vector<uint8_t> y;  // y[i][j][v]: i visited before j by vehicle v
  std::vector<uint8_t> z;  // z[i][v]
  std::vector<uint8_t> u;  // u[v]
  std::vector<double> a;   // a[i][v]
  std::vector<double> c;   // c[v]

  uint8_t& yref(int i, int j, int v);
  uint8_t yval(int i, int j, int v) const;
  uint8_t zval(int i, int v) const;
  double aval(int i, int v) const;
};

// Lifts a complete solution into the MILP variable space. Unused vehicles get
// all-zero variables (their dummy-depot arrival is pinned to 0).
MilpAssignment lift_assignment(const Instance& inst, const Solution& sol);

struct MilpViolation {
  std::string row;
  double violation = 0.0;  // positive amount by which the row is broken
};

struct ConstraintReport {
  std::vector<MilpViolation> violations;
  bool clean() const { return violations.empty(); }
};

// Numerically checks every constraint row of the model against the lifted
// assignment and reports each broken row with its violation magnitude.
ConstraintReport evaluate_milp(const Instance& inst, const Solution& sol);

// Big-M used by the exporter and evaluator: T + max service + max travel.
double milp_big_m(const Instance& inst);

// Emits the complete model in CPLEX-LP textual form: objective, constraint
// rows, bounds and binaries, with deterministic variable naming y_i_j_k,
// z_i_k, u_k, a_i_k, c_k. The OR row of a customer appears only when its OR
// set is non-empty.
std::string export_lp(const Instance& inst);

}  // namespace avrp
