#pragma once

#include <string>
#include <utility>
#include <vector>

#include "logsum/sequence.hpp"

namespace logsum {

// Iterated-limit conditions (lim over an outer parameter of a liminf/limsup
// over a horizon) are reported as finite-grid trend verdicts with an explicit
// threshold, never as claimed true limits. The profile keeps every raw cell so
// callers can re-judge with their own rule.
struct ConditionProfile {
  std::string condition_id;  // one_sided_2_3 | thm4_ii | thm6_gap | moricz_upper | moricz_lower
  // outer parameter (lambda/alpha/delta) ordered with the grid point closest
  // to the limit point last
  std::vector<double> outer_grid;
  std::vector<double> inner_grid;           // horizons n or x, increasing
  std::vector<std::vector<double>> values;  // values[outer][inner]
  // per-outer liminf (or limsup, per the printed condition) proxy over the
  // trailing half of the inner grid
  std::vector<double> outer_proxy;
  std::vector<int> flags;  // per-outer count of degenerate inner windows
  double extrapolated = 0.0;
  double threshold = 1e-3;
  std::string verdict;  // satisfied | violated | inconclusive
};

// min over integer m in [n, lambda*n] of (1/log n) sum_{n<=i<=m} s_i/(i+1);
// lambda_grid must be decreasing toward 1, n_grid increasing.
ConditionProfile one_sided_condition(const Sequence& seq, const std::vector<double>& lambda_grid,
                                     const std::vector<index_t>& n_grid,
                                     double threshold = 1e-3);

// sup over theta in [1, alpha] of [U(x) - U(x^{1/theta})]/log x; the sup is
// exact because U is a step function with integer breakpoints, so it reduces
// to a min of U over an integer range. Condition asks for finiteness, so the
// verdict checks boundedness of the x-tail, not a sign.
ConditionProfile thm4_condition_ii(const Sequence& seq, const std::vector<double>& alpha_grid,
                                   const std::vector<double>& x_grid, double threshold = 1e-3);

// min over integer m in [n, n + delta*sqrt(n)) of (s_m - s_n)/n^r; a window
// containing only m = n contributes 0 and is counted in flags.
ConditionProfile thm6_gap_condition(const Sequence& seq, double r,
                                    const std::vector<double>& delta_grid,
                                    const std::vector<index_t>& n_grid, double threshold = 1e-3);

// Exact step-function integrals for the Moricz functionals; exposed separately
// so they can be cross-checked against brute-force quadrature.
// upper: (1/((lambda-1) log x)) integral_x^{x^lambda} (s(u) - s(x)) du/u, lambda > 1
// lower: (1/((1-lambda) log x)) integral_{x^lambda}^x (s(x) - s(u)) du/u, lambda < 1
double moricz_upper_value(const Sequence& seq, double lambda, double x);
double moricz_lower_value(const Sequence& seq, double lambda, double x);

// lambda_grid_upper decreasing toward 1 (all > 1), lambda_grid_lower
// increasing toward 1 (all in (0,1)). Both conditions are printed with the
// limsup-over-lambda ordering, so the extrapolated value is the max of the
// per-lambda liminf proxies over the lambda tail.
std::pair<ConditionProfile, ConditionProfile> moricz_conditions(
    const Sequence& seq, const std::vector<double>& lambda_grid_upper,
    const std::vector<double>& lambda_grid_lower, const std::vector<double>& x_grid,
    double threshold = 1e-3);

}  // namespace logsum
