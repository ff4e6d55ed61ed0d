#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logsum/law.hpp"
#include "logsum/sequence.hpp"

namespace logsum {

// Partial sums of a positive series at dyadic checkpoints with a finite-data
// convergence verdict. The verdict fits the decay exponent q of the dyadic
// block increments (a series with terms ~ 1/(n log^q n) has block sums
// ~ c/j^q at n = 2^j): convergent when q >= 1.3, divergent when q <= 1.15,
// else inconclusive. Series whose trailing blocks vanish outright are
// convergent with exponent reported as +99.
struct SeriesCheck {
  std::vector<index_t> checkpoints;
  std::vector<double> partial;
  double decay_exponent = 0.0;
  std::string verdict;  // convergent | divergent | inconclusive
};

struct MomentCheck {
  SeriesCheck llogl;  // partial sums of pmf(n) * n/(1+log n)
  SeriesCheck mean;   // partial sums of pmf(n) * n
  bool law_has_llogl = false;  // analytic flag carried by the law
  bool law_has_mean = false;
};

// horizon <= 1e9; sums run over the magnitude pmf
MomentCheck moment_check(const IntLaw& law, index_t horizon);

// m_k = E[X 1{|X| <= phi(k+1)}], exact partial pmf sum (0 for symmetric laws)
double truncated_mean(const IntLaw& law, index_t k);
// m_0..m_kmax in one pass with a running pointer over the support
std::vector<double> truncated_means(const IntLaw& law, index_t k_max);

struct SimReport {
  std::string statement;  // ii | iii | iv | vi | vii | viii | ix
  std::string law;
  std::uint64_t master_seed = 0;
  double beta = 2.0, gamma = 2.0, epsilon = 1.0;
  std::vector<index_t> horizons;
  std::vector<std::uint64_t> replica_seeds;
  std::vector<std::vector<double>> trajectories;  // [replica][horizon]
  std::vector<double> median_abs, q90_abs;        // per horizon
  // statements viii/ix only: replica-frequency estimate of the probability at
  // each checkpoint and the 1/n-weighted partial series built from it (blocks
  // (n_{j-1}, n_j] approximated by p_{n_j} * log(n_j/n_{j-1}))
  std::vector<double> prob_estimate, series_partial;

  std::string to_json() const;
  std::string to_csv() const;
};

// Per-replica trajectories of one Theorem-8 statement statistic:
//   ii:  max_{h/2 < k <= h} |X_k| / (k log k)
//   iii: (1/log(h+1)) sum_{1<=i<=h} (X_i - m_i)/(i+1)
//   iv:  power-series logarithmic transform of (X_i - m_i) at x = 1 - 1/h
//   vi:  (1/phi(h)) sum_{i<=h} (X_i - m_i)
//   vii: (1/phi(h)) sum_{w < i <= h} (X_i - m_i), w = floor(phi_inv(phi(h)/beta))
//   viii/ix: indicator of |sum_{i<=n} (X_i - m_{i+K})| (viii) or its running
//            max over k <= n (ix) exceeding phi(n/(gamma-1))*epsilon, with
//            K = floor(n/(gamma-1))
// Replica r draws its own generator from replica_seed(master_seed, r), so the
// result is independent of the thread count.
SimReport simulate_statement(const std::string& statement, const IntLaw& law,
                             const std::vector<index_t>& horizons, int replicas,
                             std::uint64_t master_seed, double beta = 2.0, double gamma = 2.0,
                             double epsilon = 1.0, int threads = 1);

// partial sums of sum_n P[|X| > epsilon * n log n] (Borel-Cantelli certificate)
SeriesCheck exceedance_series(const IntLaw& law, double epsilon, index_t horizon);

}  // namespace logsum
