#include "logsum/asclt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "logsum/kahan.hpp"
#include "logsum/special_functions.hpp"

namespace logsum {

CltLaw parse_clt_law(const std::string& name) {
  if (name == "rademacher") return CltLaw::rademacher;
  if (name == "uniform_pm") return CltLaw::uniform_pm;
  if (name == "two_point_std") return CltLaw::two_point_std;
  throw std::invalid_argument("unknown CLT law: " + name);
}

std::string clt_law_name(CltLaw law) {
  switch (law) {
    case CltLaw::rademacher: return "rademacher";
    case CltLaw::uniform_pm: return "uniform_pm";
    case CltLaw::two_point_std: return "two_point_std";
  }
  return "?";
}

double sample_clt(CltLaw law, SplitMix64& rng) {
  switch (law) {
    case CltLaw::rademacher:
      return rng.next_sign_bit() ? -1.0 : 1.0;
    case CltLaw::uniform_pm: {
      constexpr double root3 = 1.7320508075688772;
      return (2.0 * rng.next_double() - 1.0) * root3;
    }
    case CltLaw::two_point_std:
      // P(2) = 0.2, P(-0.5) = 0.8: mean 0, variance 1
      return rng.next_double() < 0.2 ? 2.0 : -0.5;
  }
  return 0.0;
}

AscltCurve asclt_curve(CltLaw law, index_t n, const std::vector<double>& x_grid,
                       std::uint64_t seed) {
  if (n < 10) throw std::domain_error("asclt_curve: need n >= 10");
  if (x_grid.empty()) throw std::domain_error("asclt_curve: empty grid");
  for (size_t j = 1; j < x_grid.size(); ++j) {
    if (!(x_grid[j] > x_grid[j - 1])) {
      throw std::domain_error("asclt_curve: grid must be strictly increasing");
    }
  }

  AscltCurve curve;
  curve.law = clt_law_name(law);
  curve.n = n;
  curve.seed = seed;
  curve.x = x_grid;

  std::vector<KahanSum> bins(x_grid.size());
  SplitMix64 rng(seed);
  KahanSum S;
  for (index_t k = 1; k <= n; ++k) {
    S.add(sample_clt(law, rng));
    double z = S.value() / std::sqrt((double)k);
    auto it = std::lower_bound(x_grid.begin(), x_grid.end(), z);
    if (it != x_grid.end()) bins[(size_t)(it - x_grid.begin())].add(1.0 / (double)k);
  }

  double ln = std::log((double)n);
  KahanSum run;
  for (size_t j = 0; j < x_grid.size(); ++j) {
    run.add(bins[j].value());
    curve.empirical.push_back(run.value() / ln);
    curve.reference.push_back(normal_cdf(x_grid[j]));
    curve.sup_gap = std::max(curve.sup_gap, std::abs(curve.empirical.back() - curve.reference.back()));
  }
  return curve;
}

std::string AscltCurve::to_csv() const {
  std::string out = "x,empirical,reference\n";
  char buf[128];
  for (size_t j = 0; j < x.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", x[j], empirical[j], reference[j]);
    out += buf;
  }
  return out;
}

}  // namespace logsum
