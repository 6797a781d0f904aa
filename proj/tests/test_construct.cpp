#include "avrp/construct.hpp"

#include "avrp/rng.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace avrp;
using namespace avrp::testing;

TEST_CASE("single reachable customer yields one route") {
  const Instance inst = make_instance({{3.0, 4.0, 5.0, 2.0}}, 100.0, 10.0, 3);
  Rng rng(1);
  const Solution sol = build_initial(inst, rng);
  CHECK(sol.stack.empty());
  CHECK(sol.vehicle_number() == 1);
  CHECK(sol.routes[0].seq == std::vector<int>{1});
}

TEST_CASE("an AND chain with wide windows fills a single route in order") {
  const Instance inst =
      make_instance({{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}, 500.0, 100.0, 3,
                    {{1, 2, Relation::And}, {2, 3, Relation::And}});
  Rng rng(1);
  const Solution sol = build_initial(inst, rng);
  CHECK(sol.vehicle_number() == 1);
  CHECK(sol.routes[0].seq == std::vector<int>{1, 2, 3});
}

TEST_CASE("an OR successor waits for a vehicle that carries its predecessor") {
  // Vehicle 1 takes 1 and 2 (AllPRE 0, lowest ids). Capacity then blocks 3,
  // and 4 is blocked by its OR set; both land together on vehicle 2, 3 first.
  const Instance inst = make_instance(
      {
          {1.0, 0.0, 35.0},  // 1
          {0.0, 1.0, 35.0},  // 2
          {5.0, 5.0, 40.0},  // 3: too heavy for vehicle 1
          {6.0, 5.0, 10.0},  // 4: OR_4 = {3}
      },
      500.0, 80.0, 4, {{3, 4, Relation::Or}});
  Rng rng(1);
  const Solution sol = build_initial(inst, rng);
  REQUIRE(sol.vehicle_number() == 2);
  CHECK(sol.routes[0].seq == std::vector<int>{1, 2});
  CHECK(sol.routes[1].seq == std::vector<int>{3, 4});
  CHECK(validate(inst, sol).feasible());
}

TEST_CASE("construction output validates except possibly the fleet bound") {
  Rng rng(31);
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_instance(rng, 4 + static_cast<int>(rng.uniform_int(0, 10)),
                                          rng.unit() * 0.5, 50);
    Rng build_rng(7);
    Solution sol;
    try {
      sol = build_initial(inst, build_rng);
    } catch (const ConstructionFailure&) {
      continue;  // OR set stranded beyond repair; legal outcome
    }
    ++built;
    CHECK(sol.stack.empty());
    CHECK(validate(inst, sol).feasible());  // fleet bound is 50, never binding here

    // every customer exactly once
    std::vector<int> seen(static_cast<size_t>(inst.customer_count()) + 1, 0);
    for (const Route& r : sol.routes)
      for (const int c : r.seq) ++seen[static_cast<size_t>(c)];
    for (int c = 1; c <= inst.customer_count(); ++c) CHECK(seen[static_cast<size_t>(c)] == 1);
  }
  CHECK(built >= 15);
}

TEST_CASE("construction is deterministic in the instance") {
  Rng rng(5);
  const auto state = random_constructible_state(rng, 12, 0.6);
  REQUIRE(state);
  Rng r1(1), r2(999);  // rng is interface-only; results must not depend on it
  const Solution a = build_initial(state->inst, r1);
  const Solution b = build_initial(state->inst, r2);
  REQUIRE(a.routes.size() == b.routes.size());
  for (size_t k = 0; k < a.routes.size(); ++k) CHECK(a.routes[k].seq == b.routes[k].seq);
}

TEST_CASE("a customer that cannot reach its window alone fails construction") {
  // early/late window closes before travel can arrive... late < travel time.
  CHECK_THROWS_AS(
      [] {
        const Instance inst =
            make_instance({{60.0, 80.0, 1.0, 0.0, 0.0, 50.0}}, 400.0, 10.0, 2);  // t0 = 100 > 50
        Rng rng(1);
        return build_initial(inst, rng);
      }(),
      ConstructionFailure);
}

TEST_CASE("an exhausted OR set on closed vehicles fails construction") {
  // Q = 40: vehicle 1 takes {1}, capacity blocks 2 there; a fresh vehicle can
  // never host 2 because its only OR predecessor is already spent.
  const Instance inst = make_instance({{1.0, 0.0, 40.0}, {2.0, 0.0, 40.0}}, 400.0, 40.0, 4,
                                      {{1, 2, Relation::Or}});
  Rng rng(1);
  CHECK_THROWS_AS(build_initial(inst, rng), ConstructionFailure);
}

TEST_CASE("a node with an excluded AND predecessor is never inserted first") {
  // After inserting 1, its unvisited AND-predecessors leave the candidate set:
  // rel(1, 3) = AND keeps 3 off the current vehicle once... the other
  // direction: rel(2, 3) AND with 2 excluded keeps 3 out until a new vehicle.
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(rng, 12, 0.9, 40);
    Rng build_rng(1);
    Solution sol;
    try {
      sol = build_initial(inst, build_rng);
    } catch (const ConstructionFailure&) {
      continue;
    }
    // Candidate-set law shows up as feasibility of the result: no co-assigned
    // AND pair out of order.
    CHECK(validate(inst, sol).feasible());
  }
}
