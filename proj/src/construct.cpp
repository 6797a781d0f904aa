#include "avrp/construct.hpp"

#include <algorithm>
#include <vector>

#include "avrp/moves.hpp"

namespace avrp {

namespace {

Solution build_initial_impl(const Instance& inst, bool allow_partial) {
  const int n = inst.customer_count();
  const PrecedenceMatrix& pm = inst.pm();

  std::vector<int> all_pre(static_cast<size_t>(n) + 1, 0);
  std::vector<char> visited(static_cast<size_t>(n) + 1, 0);
  std::vector<char> in_candidate(static_cast<size_t>(n) + 1, 0);
  for (int c = 1; c <= n; ++c) {
    all_pre[static_cast<size_t>(c)] = static_cast<int>(pm.and_predecessors(c).size() +
                                                       pm.or_predecessors(c).size());
    in_candidate[static_cast<size_t>(c)] = 1;
  }

  Solution sol;
  sol.stack.reserve(static_cast<size_t>(n));
  for (int c = 1; c <= n; ++c) sol.stack.push_back(c);
  sol.routes.push_back(Route{0, {}, {}, 0.0, 0.0});

  int remaining = n;
  std::vector<int> candidates;
  candidates.reserve(static_cast<size_t>(n));

  while (remaining > 0) {
    candidates.clear();
    for (int c = 1; c <= n; ++c)
      if (in_candidate[static_cast<size_t>(c)]) candidates.push_back(c);
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      const int pa = all_pre[static_cast<size_t>(a)], pb = all_pre[static_cast<size_t>(b)];
      return pa != pb ? pa < pb : a < b;
    });

    const int cur = sol.vehicle_number() - 1;
    bool inserted = false;
    for (const int c : candidates) {
      const Move move{MoveKind::StackInsert, -1, -1, cur,
                      static_cast<int>(sol.routes[static_cast<size_t>(cur)].seq.size()), c};
      const MoveOutcome outcome = check_move(inst, sol, move);
      if (!outcome.feasible) continue;
      apply_move(inst, sol, move, outcome);
      visited[static_cast<size_t>(c)] = 1;
      in_candidate[static_cast<size_t>(c)] = 0;
      --remaining;
      for (const auto& [succ, rel] : pm.successors(c)) {
        (void)rel;
        if (!visited[static_cast<size_t>(succ)]) --all_pre[static_cast<size_t>(succ)];
      }
      // Unvisited AND-predecessors of c could only land after c on this
      // vehicle now; shut them out until the next vehicle opens.
      for (const int a : pm.and_predecessors(c)) {
        if (!visited[static_cast<size_t>(a)]) in_candidate[static_cast<size_t>(a)] = 0;
      }
      inserted = true;
      break;
    }
    if (inserted || remaining == 0) continue;

    if (sol.routes.back().seq.empty()) {
      // A fresh vehicle with the full unvisited set admitted took nothing, so
      // append-only filling is deadlocked (typically an OR predecessor
      // stranded on an earlier vehicle). Fall back to full-position insertion
      // into the existing routes before giving up.
      sol.routes.pop_back();
      int rescued = 0;
      for (int c = 1; c <= n && rescued == 0; ++c) {
        if (visited[static_cast<size_t>(c)]) continue;
        for (int k = 0; k < sol.vehicle_number() && rescued == 0; ++k) {
          const int len = static_cast<int>(sol.routes[static_cast<size_t>(k)].seq.size());
          for (int q = 0; q <= len && rescued == 0; ++q) {
            const Move move{MoveKind::StackInsert, -1, -1, k, q, c};
            const MoveOutcome outcome = check_move(inst, sol, move);
            if (!outcome.feasible) continue;
            apply_move(inst, sol, move, outcome);
            rescued = c;
          }
        }
      }
      if (rescued == 0) {
        int blocked = 0;
        for (int c = 1; c <= n; ++c) {
          if (!visited[static_cast<size_t>(c)]) {
            blocked = c;
            break;
          }
        }
        if (allow_partial) break;  // leave the leftovers on the stack
        throw ConstructionFailure(blocked, "no remaining customer fits any vehicle");
      }
      visited[static_cast<size_t>(rescued)] = 1;
      --remaining;
      for (const auto& [succ, rel] : pm.successors(rescued)) {
        (void)rel;
        if (!visited[static_cast<size_t>(succ)]) --all_pre[static_cast<size_t>(succ)];
      }
    }
    sol.routes.push_back(Route{sol.vehicle_number(), {}, {}, 0.0, 0.0});
    for (int c = 1; c <= n; ++c)
      in_candidate[static_cast<size_t>(c)] = visited[static_cast<size_t>(c)] ? 0 : 1;
  }

  // An untouched trailing vehicle can be left behind when the last insertion
  // closed the search; drop it.
  std::erase_if(sol.routes, [](const Route& r) { return r.seq.empty(); });
  for (size_t k = 0; k < sol.routes.size(); ++k) sol.routes[k].vehicle = static_cast<int>(k);
  return sol;
}

}  // namespace

Solution build_initial(const Instance& inst, Rng& /*rng*/) {
  return build_initial_impl(inst, false);
}

Solution build_initial_partial(const Instance& inst, Rng& /*rng*/) {
  return build_initial_impl(inst, true);
}

}  // namespace avrp
