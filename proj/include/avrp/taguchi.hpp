#pragma once

#include <array>
#include <string>
#include <vector>

#include "avrp/solver.hpp"

namespace avrp {

struct TaguchiFactor {
  std::string name;
  std::array<double, 3> levels;
};

// Four three-level factors crossed through the standard L9(3^4) orthogonal
// array: every pair of columns covers all nine ordered level pairs exactly
// once.
struct TaguchiPlan {
  std::array<TaguchiFactor, 4> factors;

  static const std::array<std::array<int, 4>, 9>& l9();
  static TaguchiPlan default_plan();  // Max_iter / notImpMax / Temp / alpha levels

  bool orthogonal() const;
  SolverParams params_for_trial(int trial, const SolverParams& base = {}) const;
};

struct TrialSummary {
  int trial = 0;
  std::array<int, 4> levels{};  // 0-based level index per factor
  std::vector<double> responses;
  double sn = 0.0;
  double mean = 0.0;
};

// Response-table aggregation in the classic layout: per factor, mean S/N and
// mean response at each level, delta = max - min, rank by delta (1 = widest),
// plus the recommended level under each criterion (max S/N; min mean).
struct ResponseTable {
  std::array<std::array<double, 3>, 4> sn_by_level{};
  std::array<std::array<double, 3>, 4> mean_by_level{};
  std::array<double, 4> sn_delta{};
  std::array<double, 4> mean_delta{};
  std::array<int, 4> sn_rank{};
  std::array<int, 4> mean_rank{};
  std::array<int, 4> best_level_by_sn{};
  std::array<int, 4> best_level_by_mean{};

  std::string to_csv(const TaguchiPlan& plan) const;
};

ResponseTable build_response_table(const TaguchiPlan& plan,
                                   const std::vector<TrialSummary>& trials);

}  // namespace avrp
