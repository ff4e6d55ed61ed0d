#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "logsum/rng.hpp"

namespace logsum {

// Probability law on the integers. Base families live on {0,1,...} (two_point,
// poisson_like) or {2,3,...} (zipf tails); a signed variant attaches an
// independent fair sign to the magnitude. Zipf normalizers are completed
// analytically beyond a dense table with a midpoint-rule tail integral, so the
// pmf sums to 1 within 1e-10 including the tail remainder.
class IntLaw {
 public:
  enum class Family { two_point, poisson_like, zipf_log2, zipf_log1, zipf_plain };

  static IntLaw two_point(std::int64_t v0, std::int64_t v1, double p1);
  static IntLaw poisson1();  // pmf e^{-1}/k!
  static IntLaw zipf_plain(bool sign = false);  // pmf ~ 1/n^2,          n >= 2
  static IntLaw zipf_log1(bool sign = false);   // pmf ~ 1/(n^2 log n),  n >= 2
  static IntLaw zipf_log2(bool sign = false);   // pmf ~ 1/(n^2 log^2 n), n >= 2

  // two_point:v0,v1,p | poisson1 | zipf_plain[,signed] | zipf_log1[,signed] | zipf_log2[,signed]
  static IntLaw parse(const std::string& spec);

  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  bool is_signed() const { return signed_; }
  // symmetric about 0, so every truncated mean vanishes
  bool is_symmetric() const;

  bool has_mean() const { return has_mean_; }
  bool has_llogl() const { return has_llogl_; }
  // analytic mean of the law (0 for symmetric signed laws); only valid when
  // has_mean()
  double mean() const;

  // pmf of the magnitude at n (un-truncated analytic value)
  double pmf(std::int64_t n) const;
  // P(|X| > t), tail-completed analytically
  double tail(double t) const;

  // (value, probability) pairs for bounded laws; empty for unbounded families
  const std::vector<std::pair<std::int64_t, double>>& atoms() const { return atoms_; }

  std::int64_t support_min() const { return support_min_; }
  // sampling cap for unbounded laws; tail mass beyond it is assigned to the
  // cap and reported here as the induced bias
  std::int64_t sampling_cap() const { return cap_; }
  double cap_bias_mass() const { return cap_bias_; }

  // consumes one uniform for the magnitude and, for signed laws, one more for
  // the sign
  std::int64_t sample(SplitMix64& rng) const;

  // base pmf as a dense vector on [0, K] with combined trimmed head/tail mass
  // <= trim_tol (for the p-method convolution); throws if support has
  // negative values
  std::vector<double> pmf_vector(double trim_tol) const;

 private:
  IntLaw() = default;
  static IntLaw finish_zipf(IntLaw law, bool sign, const char* base_name,
                            bool has_mean, bool has_llogl);
  double zipf_weight(double t) const;      // un-normalized weight at t
  double zipf_tail_integral(double a) const;  // integral_a^inf weight dt

  Family family_ = Family::two_point;
  std::string name_;
  bool signed_ = false;
  bool has_mean_ = true;
  bool has_llogl_ = true;
  double mean_ = 0.0;
  std::int64_t support_min_ = 0;

  // two_point
  std::int64_t v0_ = 0, v1_ = 0;
  double p1_ = 0.5;
  std::vector<std::pair<std::int64_t, double>> atoms_;

  // poisson / zipf sampling tables
  std::vector<double> dense_cum_;  // cumulative of magnitude pmf, index = value
  std::int64_t dense_lo_ = 0;      // value of index 0
  double norm_ = 1.0;              // zipf normalizer Z
  double above_dense_ = 0.0;       // un-normalized mass beyond the dense table
  std::int64_t cap_ = 0;
  double cap_bias_ = 0.0;
};

}  // namespace logsum
