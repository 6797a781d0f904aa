#include "avrp/metrics.hpp"

#include <vector>

#include "avrp/taguchi.hpp"
#include "doctest.h"

using namespace avrp;

TEST_CASE("relative error arithmetic") {
  CHECK(compute_re(105.0, 100.0) == doctest::Approx(5.0));
  CHECK(compute_re(100.0, 100.0) == doctest::Approx(0.0));
  CHECK(compute_re(100.0, 200.0) == doctest::Approx(-50.0));
  CHECK_THROWS(compute_re(10.0, 0.0));
}

TEST_CASE("relative percentage error uses the table orientation") {
  CHECK(compute_rpe(951.0, 1382.0) == doctest::Approx(31.19).epsilon(0.0002));
  CHECK(compute_rpe(1226.0, 1739.0) == doctest::Approx(29.50).epsilon(0.0002));
  CHECK(compute_rpe(500.0, 500.0) == doctest::Approx(0.0));
  CHECK_THROWS(compute_rpe(10.0, -1.0));
}

TEST_CASE("signal-to-noise ratio, smaller the better") {
  const std::vector<double> one{1.0};
  CHECK(compute_sn(one) == doctest::Approx(0.0));
  const std::vector<double> two{1.0, 3.0};
  CHECK(compute_sn(two) == doctest::Approx(-6.9897).epsilon(1e-4));
  const std::vector<double> tens{10.0, 10.0, 10.0};
  CHECK(compute_sn(tens) == doctest::Approx(-20.0));
  CHECK_THROWS(compute_sn(std::span<const double>{}));
}

TEST_CASE("the embedded L9 array is orthogonal") {
  CHECK(TaguchiPlan::default_plan().orthogonal());
}

TEST_CASE("plan levels match the tuning table") {
  const TaguchiPlan plan = TaguchiPlan::default_plan();
  CHECK(plan.factors[0].levels == std::array<double, 3>{500.0, 900.0, 1200.0});
  CHECK(plan.factors[1].levels == std::array<double, 3>{50.0, 70.0, 90.0});
  CHECK(plan.factors[2].levels == std::array<double, 3>{80.0, 100.0, 120.0});
  CHECK(plan.factors[3].levels == std::array<double, 3>{0.7, 0.9, 0.95});
  const SolverParams p = plan.params_for_trial(3);
  CHECK(p.max_iter == 900);   // row {1,0,1,2}
  CHECK(p.max_not_imp == 50);
  CHECK(p.temp0 == 100.0);
  CHECK(p.alpha == 0.95);
}

TEST_CASE("response table recovers a synthetic factor structure") {
  // Response = weight . level_index, so factor influence is exactly the
  // weight and the best level is always the first.
  const TaguchiPlan plan = TaguchiPlan::default_plan();
  const std::array<double, 4> weight{8.0, 1.0, 4.0, 2.0};
  std::vector<TrialSummary> trials;
  for (int t = 0; t < 9; ++t) {
    TrialSummary s;
    s.trial = t;
    s.levels = TaguchiPlan::l9()[static_cast<size_t>(t)];
    double response = 1.0;
    for (size_t f = 0; f < 4; ++f) response += weight[f] * s.levels[f];
    s.responses = {response};
    s.sn = compute_sn(s.responses);
    s.mean = response;
    trials.push_back(s);
  }
  const ResponseTable table = build_response_table(plan, trials);

  CHECK(table.mean_rank[0] == 1);  // heaviest factor ranks first
  CHECK(table.mean_rank[2] == 2);
  CHECK(table.mean_rank[3] == 3);
  CHECK(table.mean_rank[1] == 4);
  for (size_t f = 0; f < 4; ++f) {
    CHECK(table.best_level_by_mean[f] == 0);  // smaller response is better
    CHECK(table.mean_delta[f] == doctest::Approx(2.0 * weight[f]));
    // mean over the three trials at each level rises by exactly the weight
    CHECK(table.mean_by_level[f][1] - table.mean_by_level[f][0] ==
          doctest::Approx(weight[f]));
  }

  // table shape: 3 level rows x 8 columns plus delta and rank rows
  const std::string csv = table.to_csv(plan);
  int lines = 0;
  for (const char c : csv) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 1 + 3 + 2 + 2);  // header, levels, delta+rank, recommendations
}

TEST_CASE("recommendation stays inside the declared level sets") {
  const TaguchiPlan plan = TaguchiPlan::default_plan();
  std::vector<TrialSummary> trials;
  for (int t = 0; t < 9; ++t) {
    TrialSummary s;
    s.trial = t;
    s.levels = TaguchiPlan::l9()[static_cast<size_t>(t)];
    s.responses = {1.0 + 0.1 * t};
    s.sn = compute_sn(s.responses);
    s.mean = s.responses[0];
    trials.push_back(s);
  }
  const ResponseTable table = build_response_table(plan, trials);
  for (size_t f = 0; f < 4; ++f) {
    CHECK(table.best_level_by_sn[f] >= 0);
    CHECK(table.best_level_by_sn[f] <= 2);
    CHECK(table.best_level_by_mean[f] >= 0);
    CHECK(table.best_level_by_mean[f] <= 2);
  }
}
