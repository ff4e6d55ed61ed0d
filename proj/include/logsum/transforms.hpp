#pragma once

#include <map>
#include <string>
#include <vector>

#include "logsum/law.hpp"
#include "logsum/sequence.hpp"

namespace logsum {

enum class EllConvention { log_n, log_n_plus_1 };

// (1/log n) sum_{i=0}^n s_i/(i+1), or with the log(n+1), i>=1 variant.
double ell_transform(const Sequence& seq, index_t n, EllConvention conv = EllConvention::log_n);

// Power-series logarithmic method at x in (0,1):
// (1/(-log(1-x))) sum_{i>=0} s_i x^{i+1}/(i+1), trailing-window truncation.
double L_transform(const Sequence& seq, double x, double tol);

struct MovAvg {
  double raw = 0.0;         // (1/log n) sum_{floor(n^{1/lambda}) < i <= n} s_i/(i+1)
  double normalized = 0.0;  // raw / (1 - 1/lambda)
  index_t boundary = 0;     // floor(n^{1/lambda}) after exact correction
};

// floor(n^{1/lambda}) computed with exact integer-boundary comparisons of
// lambda*log(m) against log(n); float pow is not trusted at boundaries.
index_t movavg_boundary(index_t n, double lambda);

MovAvg movavg_transform(const Sequence& seq, index_t n, double lambda);

// |movavg raw - (t_n - (log m / log n) t_m)| with m = floor(n^{1/lambda}).
double dn_identity_gap(const Sequence& seq, index_t n, double lambda);

// Riesz mean R(log n): (1/x) integral_0^x S(y) dy with S(y) the partial sum of
// coefficients with log(k+1) < y; exact piecewise integration, no quadrature.
double riesz_log_transform(const CoefficientView& coeffs, double x);

// (1/(n+1)) sum_{i<=n} s_i.
double cesaro1_transform(const Sequence& seq, index_t n);

// (1-x) sum_{i>=0} s_i x^i, same truncation contract as L_transform.
double abel_transform(const Sequence& seq, double x, double tol);

// e^{-t} sum_k s_k t^k/k!, Poisson weights in log space.
double borel_transform(const Sequence& seq, double t, double tol);

// sum_i s_i P(S_n = i) with S_n the n-fold convolution of the law's pmf.
double p_method_transform(const Sequence& seq, const IntLaw& law, index_t n, double tol);

struct TransformResult {
  std::string method;
  std::vector<double> points;
  std::vector<double> raw;
  std::vector<double> normalized;  // == raw for methods without a normalization
  std::map<std::string, double> meta;
};

struct MethodSpec {
  enum class Kind { ell, movavg, cesaro1, L, abel, borel, riesz_log, pmethod };
  Kind kind = Kind::ell;
  double lambda = 2.0;                           // movavg
  EllConvention conv = EllConvention::log_n;     // ell
  double tol = 1e-10;                            // series methods
  std::string law_spec = "poisson1";             // pmethod

  static MethodSpec parse(const std::string& name);  // ell | ell1 | movavg | ...
  std::string name() const;
};

// Value of the method's estimate of the limit at integer horizon n. Series
// methods are evaluated at x = 1 - 1/n, Borel at t = n, Riesz at x = log n.
double evaluate_at_horizon(const Sequence& seq, const MethodSpec& m, index_t n);

TransformResult grid_evaluate(const Sequence& seq, const MethodSpec& m,
                              const std::vector<index_t>& horizons);

struct DriftRow {
  index_t n = 0;
  double first = 0.0;
  double second = 0.0;
  double gap = 0.0;
};

// |method1 - method2| per horizon for an ell-convergent family.
std::vector<DriftRow> equivalence_drift(const Sequence& seq, const MethodSpec& a,
                                        const MethodSpec& b,
                                        const std::vector<index_t>& horizons);

// sup over a uniform lambda-grid in [lo, hi] of
// |normalized movavg - declared family limit| at horizon n.
double uniformity_profile(const Sequence& seq, index_t n, double lo, double hi, int grid_size);

}  // namespace logsum
