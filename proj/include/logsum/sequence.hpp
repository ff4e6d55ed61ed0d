#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace logsum {

using index_t = std::int64_t;

// Immutable real sequence s_0, s_1, ... given by a closed-form rule or an
// explicit array. Explicit sequences error past their stored length rather
// than zero-padding. Families that are ell-convergent declare their limit
// and a drift bound used by the equivalence-drift contract.
class Sequence {
 public:
  static Sequence constant(double c);
  static Sequence zero() { return constant(0.0); }
  static Sequence alternating01();       // 1,0,1,0,...
  static Sequence alternating_sign();    // (-1)^n
  static Sequence slow_drift(double c, double b);        // c + b/log(n+2)
  static Sequence log_oscillation(double amp, double freq);  // amp*sin(freq*log(n+2))
  static Sequence from_values(std::vector<double> values);
  static Sequence from_function(std::function<double(index_t)> fn,
                                std::optional<double> limit = std::nullopt);
  static Sequence from_csv(const std::string& path);  // one column, header "s"

  // mini-language: const:c | alt01 | altsign | slowdrift:c,b | logosc:a,f | file:path
  static Sequence parse(const std::string& spec);

  double operator()(index_t n) const;

  // declared ell-limit, if the family has one
  std::optional<double> limit() const { return limit_; }

  // declared bound on |ell - normalized movavg| at horizon n (families with a
  // known limit only)
  std::optional<double> drift_bound(index_t n) const;

  const std::string& name() const { return name_; }
  std::optional<index_t> length() const { return length_; }  // explicit only

 private:
  Sequence() = default;
  std::function<double(index_t)> fn_;
  std::optional<double> limit_;
  std::function<double(index_t)> drift_bound_;
  std::optional<index_t> length_;
  std::string name_ = "custom";
};

// a_n view with a_0 = s_0, a_k = s_k - s_{k-1}; partial sums of a reproduce s.
class CoefficientView {
 public:
  explicit CoefficientView(const Sequence& base) : base_(&base) {}
  double operator()(index_t k) const {
    return k == 0 ? (*base_)(0) : (*base_)(k) - (*base_)(k - 1);
  }
  const Sequence& base() const { return *base_; }

 private:
  const Sequence* base_;
};

// Compensated sum of s_i/(i+1) over lo < i <= hi; empty range -> 0.
double weighted_tail_sum(const Sequence& seq, index_t lo, index_t hi);

// U(x) = sum_{0 <= i <= floor(x)} s_i/(i+1), right-continuous step function.
double u_function(const Sequence& seq, double x);

// Batch version: values of U at each index in `indices` (must be sorted
// ascending), computed in one compensated pass.
std::vector<double> u_function_at(const Sequence& seq, const std::vector<index_t>& indices);

}  // namespace logsum
