#include "avrp/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace avrp {

double compute_re(double f_sol, double f_opt) {
  if (f_opt <= 0.0) throw std::invalid_argument("compute_re requires a positive optimum");
  return (f_sol - f_opt) / f_opt * 100.0;
}

double compute_rpe(double alg_sol, double milp_sol) {
  if (milp_sol <= 0.0) throw std::invalid_argument("compute_rpe requires a positive reference");
  return (milp_sol - alg_sol) / milp_sol * 100.0;
}

double compute_sn(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("compute_sn requires a non-empty list");
  double mean_sq = 0.0;
  for (const double v : values) mean_sq += v * v;
  mean_sq /= static_cast<double>(values.size());
  if (mean_sq < 1e-12) mean_sq = 1e-12;
  return -10.0 * std::log10(mean_sq);
}

}  // namespace avrp
