#pragma once

#include <span>

namespace avrp {

// Relative error against a known optimum, in percent. fOpt must be positive.
double compute_re(double f_sol, double f_opt);

// Relative percentage gap against a MILP reference solution, in percent,
// oriented so that beating the reference upper bound reads positive:
// (milp - alg) / milp * 100. milp must be positive.
double compute_rpe(double alg_sol, double milp_sol);

// Smaller-the-better signal-to-noise ratio in decibels:
// -10 * log10(mean of squared responses). The list must be non-empty; an
// all-zero response is clamped to the +120 dB ceiling instead of diverging.
double compute_sn(std::span<const double> values);

}  // namespace avrp
