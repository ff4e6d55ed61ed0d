#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "logsum/sequence.hpp"

namespace logsum {

// Segmented sieve of Eratosthenes; keeps only the prime list (binary search
// answers primality), so a 1e8 limit stays inside a modest memory budget.
class SieveTable {
 public:
  explicit SieveTable(index_t limit);  // limit in [2, 1e8]

  index_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  bool is_prime(index_t n) const;
  index_t prime_count(index_t x) const;  // pi(x)
  index_t nth_prime(index_t n) const;    // 1-based
  // log p if n = p^m, else 0
  double mangoldt(index_t n) const;

 private:
  index_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

// sum_{n<=x} Lambda(n)/n, accumulated prime by prime with all prime powers
double mangoldt_weighted_sum(const SieveTable& sieve, index_t x);
// sum_{p<=x} log p / p
double mertens_sum(const SieveTable& sieve, index_t x);

struct PntRow {
  index_t x = 0;
  double mangoldt_drift = 0.0;  // sum Lambda(n)/n - log x
  double mertens_drift = 0.0;   // sum log p/p  - log x
  index_t pi = 0;
  double li = 0.0;
  double pi_over_li = 0.0;
  double pi_logx_over_x = 0.0;
  double pn_over_nlogn = 0.0;  // p_n/(n log n) at n = pi(x)
};

std::vector<PntRow> pnt_hierarchy_report(const SieveTable& sieve,
                                         const std::vector<index_t>& x_checkpoints);
std::string pnt_rows_to_csv(const std::vector<PntRow>& rows);

// Predicate over the positive integers, O(1)/O(log n) membership given the
// sieve. Mini-language: even | ap:a,b | primes | pap:a,b | ld:d | file:<path>.
class IntegerSet {
 public:
  static IntegerSet residue_class(index_t a, index_t b);
  static IntegerSet primes();
  static IntegerSet primes_in_ap(index_t a, index_t b);
  static IntegerSet leading_digit(int d);
  static IntegerSet explicit_list(std::vector<index_t> values);
  static IntegerSet parse(const std::string& spec);

  bool contains(index_t n, const SieveTable& sieve) const;
  const std::string& name() const { return name_; }
  bool prime_subset() const { return kind_ == Kind::primes || kind_ == Kind::primes_in_ap; }
  bool needs_sieve() const { return prime_subset(); }

 private:
  enum class Kind { residue, primes, primes_in_ap, leading_digit, explicit_list };
  IntegerSet() = default;
  Kind kind_ = Kind::residue;
  index_t a_ = 0, b_ = 1;
  int digit_ = 1;
  std::unordered_set<index_t> list_;
  std::string name_;
};

struct DensityRow {
  index_t n = 0;
  index_t count = 0;
  double arithmetic = 0.0;   // count/n at this checkpoint
  double arith_lower = 0.0;  // min over all k <= n of count(k)/k
  double arith_upper = 0.0;  // max over all k <= n
  double log_hnorm = 0.0;    // (sum_{k in A, k<=n} 1/k) / H_n
  double log_raw = 0.0;      // same sum over log n (the textbook normalizer)
  bool chain_ok = false;     // arith_lower <= log_hnorm <= arith_upper
};

struct AnalyticRow {
  double sigma = 0.0;
  double raw = 0.0;             // (sigma-1) * sum_{n in A, n<=cap} n^-sigma
  double tail_completed = 0.0;  // raw + dhat * cap^(1-sigma)
  // prime subsets only: sum_{p in A} p^-sigma / sum_p p^-sigma, full range and
  // restricted to p > 1e3 (drops small-prime bias)
  double prime_ratio = 0.0;
  double prime_ratio_tail = 0.0;
};

struct DensityReport {
  std::string set_name;
  std::vector<DensityRow> rows;
  // Richardson-style window estimate of the logarithmic density:
  // (L(N_last) - L(N_first)) / log(N_last/N_first)
  double windowed_log_estimate = 0.0;
  std::vector<AnalyticRow> analytic;
  bool is_prime_subset = false;
  std::string to_csv() const;
};

// checkpoints increasing; sigma_grid decreasing toward 1 (all > 1); the
// analytic sums run to cap = last checkpoint, which must be within the sieve
// when the predicate needs primality
DensityReport density_report(const IntegerSet& set, const std::vector<index_t>& checkpoints,
                             const std::vector<double>& sigma_grid, const SieveTable& sieve);

}  // namespace logsum
