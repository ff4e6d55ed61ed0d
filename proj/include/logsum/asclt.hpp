#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logsum/rng.hpp"
#include "logsum/sequence.hpp"

namespace logsum {

// Centered, unit-variance step laws for the almost-sure CLT functional.
enum class CltLaw { rademacher, uniform_pm, two_point_std };

CltLaw parse_clt_law(const std::string& name);  // rademacher | uniform_pm | two_point_std
std::string clt_law_name(CltLaw law);
double sample_clt(CltLaw law, SplitMix64& rng);

struct AscltCurve {
  std::string law;
  index_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> x;          // grid, increasing
  std::vector<double> empirical;  // A_n(x), a nondecreasing weighted ECDF
  std::vector<double> reference;  // Phi(x)
  double sup_gap = 0.0;           // max over the grid of |empirical - reference|
  std::string to_csv() const;     // columns x, empirical, reference
};

// A_n(x) = (1/log n) sum_{k<=n} I(S_k/sqrt(k) <= x)/k for every grid point in
// one pass over k: each k increments a bin counter at the first grid point
// >= S_k/sqrt(k), and a prefix sum turns the counters into the curve
// (O(n + |grid|), not O(n * |grid|)).
AscltCurve asclt_curve(CltLaw law, index_t n, const std::vector<double>& x_grid,
                       std::uint64_t seed);

}  // namespace logsum
