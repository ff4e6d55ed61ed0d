// Independent oracles used by the test suite: these deliberately avoid the
// library's own algorithms (bisection instead of Halley, rational arithmetic
// instead of compensated floating point, midpoint quadrature instead of exact
// segment logs).
#pragma once

#include <cmath>
#include <vector>

#include "logsum/rng.hpp"
#include "logsum/sequence.hpp"

namespace oracles {

// solve w e^w = z for z >= 0 by pure bisection
inline double lambert_bisect(double z) {
  if (z == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi * std::exp(hi) < z) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) < z) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// midpoint quadrature of the Moricz upper functional with nodes aligned
// inside the integer segments of the step function (never straddling jumps)
inline double moricz_upper_quadrature(const logsum::Sequence& s, double lambda, double x,
                                      long nodes_per_segment) {
  double hi = std::pow(x, lambda);
  double sx = s((logsum::index_t)std::floor(x));
  double acc = 0.0;
  for (logsum::index_t i = (logsum::index_t)std::floor(x); (double)i < hi; ++i) {
    double a = std::max(x, (double)i), b = std::min(hi, (double)i + 1.0);
    if (b <= a) continue;
    double h = (b - a) / (double)nodes_per_segment, seg = 0.0;
    for (long j = 0; j < nodes_per_segment; ++j) seg += h / (a + ((double)j + 0.5) * h);
    acc += (s(i) - sx) * seg;
  }
  return acc / ((lambda - 1.0) * std::log(x));
}

inline double moricz_lower_quadrature(const logsum::Sequence& s, double lambda, double x,
                                      long nodes_per_segment) {
  double lo = std::pow(x, lambda);
  double sx = s((logsum::index_t)std::floor(x));
  double acc = 0.0;
  for (logsum::index_t i = (logsum::index_t)std::floor(lo); (double)i < x; ++i) {
    double a = std::max(lo, (double)i), b = std::min(x, (double)i + 1.0);
    if (b <= a) continue;
    double h = (b - a) / (double)nodes_per_segment, seg = 0.0;
    for (long j = 0; j < nodes_per_segment; ++j) seg += h / (a + ((double)j + 0.5) * h);
    acc += (sx - s(i)) * seg;
  }
  return acc / ((1.0 - lambda) * std::log(x));
}

// uniform values in [-1, 1], deterministic
inline std::vector<double> random_values(std::uint64_t seed, size_t n) {
  logsum::SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * rng.next_double() - 1.0;
  return v;
}

}  // namespace oracles
