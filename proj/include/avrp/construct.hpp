#pragma once

#include <stdexcept>
#include <string>

#include "avrp/model.hpp"
#include "avrp/rng.hpp"

namespace avrp {

// Raised when some customer can never be placed, even first on a fresh
// vehicle (unreachable time window, or an OR-predecessor set that is already
// exhausted on closed routes).
class ConstructionFailure : public std::runtime_error {
 public:
  ConstructionFailure(int node, const std::string& why)
      : std::runtime_error("construction failure at node " + std::to_string(node) + ": " + why),
        node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

// Sequential route filling: opens one vehicle at a time and appends the first
// candidate (sorted by unfulfilled-predecessor count, ties by id) that passes
// the three-stage insertion test. The result always has an empty stack and
// satisfies every constraint except, possibly, the fleet-size bound. The rng
// parameter exists for interface uniformity; the procedure is deterministic.
Solution build_initial(const Instance& inst, Rng& rng);

// Same procedure, but instead of failing on customers that no vehicle can
// take, parks them on the stack for the search to reinsert.
Solution build_initial_partial(const Instance& inst, Rng& rng);

}  // namespace avrp
