#include "avrp/taguchi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "avrp/metrics.hpp"

namespace avrp {

const std::array<std::array<int, 4>, 9>& TaguchiPlan::l9() {
  static const std::array<std::array<int, 4>, 9> array = {{
      {0, 0, 0, 0},
      {0, 1, 1, 1},
      {0, 2, 2, 2},
      {1, 0, 1, 2},
      {1, 1, 2, 0},
      {1, 2, 0, 1},
      {2, 0, 2, 1},
      {2, 1, 0, 2},
      {2, 2, 1, 0},
  }};
  return array;
}

TaguchiPlan TaguchiPlan::default_plan() {
  return TaguchiPlan{{{
      {"max_iter", {500.0, 900.0, 1200.0}},
      {"max_not_imp", {50.0, 70.0, 90.0}},
      {"temp0", {80.0, 100.0, 120.0}},
      {"alpha", {0.7, 0.9, 0.95}},
  }}};
}

bool TaguchiPlan::orthogonal() const {
  const auto& rows = l9();
  for (size_t c1 = 0; c1 < 4; ++c1) {
    for (size_t c2 = c1 + 1; c2 < 4; ++c2) {
      std::array<int, 9> seen{};
      for (const auto& row : rows) ++seen[static_cast<size_t>(row[c1] * 3 + row[c2])];
      for (const int count : seen)
        if (count != 1) return false;
    }
  }
  return true;
}

SolverParams TaguchiPlan::params_for_trial(int trial, const SolverParams& base) const {
  const auto& row = l9()[static_cast<size_t>(trial)];
  SolverParams p = base;
  p.max_iter = static_cast<int>(factors[0].levels[static_cast<size_t>(row[0])]);
  p.max_not_imp = static_cast<int>(factors[1].levels[static_cast<size_t>(row[1])]);
  p.temp0 = factors[2].levels[static_cast<size_t>(row[2])];
  p.alpha = factors[3].levels[static_cast<size_t>(row[3])];
  return p;
}

ResponseTable build_response_table(const TaguchiPlan& /*plan*/,
                                   const std::vector<TrialSummary>& trials) {
  ResponseTable table;
  std::array<std::array<int, 3>, 4> counts{};
  for (const TrialSummary& t : trials) {
    for (size_t f = 0; f < 4; ++f) {
      const auto level = static_cast<size_t>(t.levels[f]);
      table.sn_by_level[f][level] += t.sn;
      table.mean_by_level[f][level] += t.mean;
      ++counts[f][level];
    }
  }
  for (size_t f = 0; f < 4; ++f) {
    for (size_t l = 0; l < 3; ++l) {
      if (counts[f][l] > 0) {
        table.sn_by_level[f][l] /= counts[f][l];
        table.mean_by_level[f][l] /= counts[f][l];
      }
    }
    const auto& sn = table.sn_by_level[f];
    const auto& mean = table.mean_by_level[f];
    table.sn_delta[f] = *std::max_element(sn.begin(), sn.end()) -
                        *std::min_element(sn.begin(), sn.end());
    table.mean_delta[f] = *std::max_element(mean.begin(), mean.end()) -
                          *std::min_element(mean.begin(), mean.end());
    table.best_level_by_sn[f] =
        static_cast<int>(std::max_element(sn.begin(), sn.end()) - sn.begin());
    table.best_level_by_mean[f] =
        static_cast<int>(std::min_element(mean.begin(), mean.end()) - mean.begin());
  }
  auto rank_of = [](const std::array<double, 4>& deltas) {
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return deltas[static_cast<size_t>(a)] != deltas[static_cast<size_t>(b)]
                 ? deltas[static_cast<size_t>(a)] > deltas[static_cast<size_t>(b)]
                 : a < b;
    });
    std::array<int, 4> rank{};
    for (int r = 0; r < 4; ++r) rank[static_cast<size_t>(order[static_cast<size_t>(r)])] = r + 1;
    return rank;
  };
  table.sn_rank = rank_of(table.sn_delta);
  table.mean_rank = rank_of(table.mean_delta);
  return table;
}

std::string ResponseTable::to_csv(const TaguchiPlan& plan) const {
  std::ostringstream out;
  out << "level";
  for (const auto& f : plan.factors) out << ",sn_" << f.name;
  for (const auto& f : plan.factors) out << ",mean_" << f.name;
  out << '\n';
  for (size_t l = 0; l < 3; ++l) {
    out << l + 1;
    for (size_t f = 0; f < 4; ++f) out << ',' << sn_by_level[f][l];
    for (size_t f = 0; f < 4; ++f) out << ',' << mean_by_level[f][l];
    out << '\n';
  }
  out << "delta";
  for (size_t f = 0; f < 4; ++f) out << ',' << sn_delta[f];
  for (size_t f = 0; f < 4; ++f) out << ',' << mean_delta[f];
  out << '\n';
  out << "rank";
  for (size_t f = 0; f < 4; ++f) out << ',' << sn_rank[f];
  for (size_t f = 0; f < 4; ++f) out << ',' << mean_rank[f];
  out << '\n';
  out << "recommended_by_sn";
  for (size_t f = 0; f < 4; ++f)
    out << ',' << plan.factors[f].levels[static_cast<size_t>(best_level_by_sn[f])];
  for (size_t f = 0; f < 4; ++f) out << ',';
  out << '\n';
  out << "recommended_by_mean";
  for (size_t f = 0; f < 4; ++f)
    out << ',' << plan.factors[f].levels[static_cast<size_t>(best_level_by_mean[f])];
  for (size_t f = 0; f < 4; ++f) out << ',';
  out << '\n';
  return out.str();
}

}  // namespace avrp
