#include "logsum/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "logsum/kahan.hpp"

namespace logsum {

namespace {

constexpr index_t kSeriesCap = 100000000;  // 1e8 terms
constexpr int kTrailingWindow = 50;

double require_unit_interval(double x, const char* who) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error(std::string(who) + ": x must be in (0,1)");
  }
  return x;
}

// max of |s_i| over the trailing window, amortized O(1) via a monotone deque
class WindowMax {
 public:
  explicit WindowMax(int window) : window_(window) {}
  void push(index_t i, double v) {
    while (!q_.empty() && q_.back().second <= v) q_.pop_back();
    q_.emplace_back(i, v);
    while (q_.front().first <= i - window_) q_.pop_front();
  }
  double max() const { return q_.front().second; }

 private:
  int window_;
  std::deque<std::pair<index_t, double>> q_;
};

}  // namespace

double ell_transform(const Sequence& seq, index_t n, EllConvention conv) {
  if (n < 2) throw std::domain_error("ell_transform: need n >= 2");
  KahanSum acc;
  if (conv == EllConvention::log_n) {
    for (index_t i = 0; i <= n; ++i) acc.add(seq(i) / (double)(i + 1));
    return acc.value() / std::log((double)n);
  }
  for (index_t i = 1; i <= n; ++i) acc.add(seq(i) / (double)(i + 1));
  return acc.value() / std::log((double)n + 1.0);
}

double L_transform(const Sequence& seq, double x, double tol) {
  require_unit_interval(x, "L_transform");
  double norm = -std::log1p(-x);
  KahanSum acc;
  double xp = x;  // x^{i+1}
  WindowMax recent(kTrailingWindow);
  int quiet = 0;
  for (index_t i = 0; i < kSeriesCap; ++i) {
    double si = seq(i);
    acc.add(si * xp / (double)(i + 1));
    recent.push(i, std::abs(si));
    // tail bound: sum_{j>i} M x^{j+1}/(j+1) <= M x^{i+2} / ((i+2)(1-x))
    if (recent.max() * xp * x / ((double)(i + 2) * (1.0 - x)) < tol * norm) {
      if (++quiet >= kTrailingWindow) return acc.value() / norm;
    } else {
      quiet = 0;
    }
    xp *= x;
  }
  throw std::runtime_error("L_transform: series did not truncate within 1e8 terms");
}

index_t movavg_boundary(index_t n, double lambda) {
  if (n < 2) throw std::domain_error("movavg_boundary: need n >= 2");
  if (!(lambda > 1.0)) throw std::domain_error("movavg_boundary: need lambda > 1");
  double ln = std::log((double)n);
  index_t m = (index_t)std::floor(std::exp(ln / lambda));
  // exact correction: m = max { k : lambda*log(k) <= log(n) }, with the
  // boundary case (equality within 1e-12) kept at m so the strict sum
  // excludes i = n^{1/lambda} when it is an exact integer
  auto fits = [&](index_t k) { return lambda * std::log((double)k) <= ln + 1e-12; };
  while (m > 1 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m;
}

MovAvg movavg_transform(const Sequence& seq, index_t n, double lambda) {
  MovAvg out;
  out.boundary = movavg_boundary(n, lambda);
  out.raw = weighted_tail_sum(seq, out.boundary, n) / std::log((double)n);
  out.normalized = out.raw / (1.0 - 1.0 / lambda);
  return out;
}

double dn_identity_gap(const Sequence& seq, index_t n, double lambda) {
  index_t m = movavg_boundary(n, lambda);
  if (m < 2) throw std::domain_error("dn_identity_gap: boundary index below 2");
  double tn = ell_transform(seq, n);
  double tm = ell_transform(seq, m);
  double dn = movavg_transform(seq, n, lambda).raw;
  return std::abs(dn - (tn - std::log((double)m) / std::log((double)n) * tm));
}

double riesz_log_transform(const CoefficientView& coeffs, double x) {
  if (!(x > 0.0)) throw std::domain_error("riesz_log_transform: need x > 0");
  // S(y) = s_k on (log(k+1), log(k+2)]; exact breakpoint integration
  const Sequence& s = coeffs.base();
  KahanSum acc;
  index_t k = 0;
  for (;;) {
    double y_lo = std::log((double)k + 1.0);
    double y_hi = std::log((double)k + 2.0);
    if (y_lo >= x) break;
    acc.add(s(k) * (std::min(y_hi, x) - y_lo));
    if (y_hi >= x) break;
    ++k;
  }
  return acc.value() / x;
}

double cesaro1_transform(const Sequence& seq, index_t n) {
  if (n < 0) throw std::domain_error("cesaro1_transform: need n >= 0");
  KahanSum acc;
  for (index_t i = 0; i <= n; ++i) acc.add(seq(i));
  return acc.value() / (double)(n + 1);
}

double abel_transform(const Sequence& seq, double x, double tol) {
  require_unit_interval(x, "abel_transform");
  KahanSum acc;
  double xp = 1.0;  // x^i
  WindowMax recent(kTrailingWindow);
  int quiet = 0;
  for (index_t i = 0; i < kSeriesCap; ++i) {
    double si = seq(i);
    acc.add(si * xp);
    recent.push(i, std::abs(si));
    // tail bound after the (1-x) normalization: (1-x) sum_{j>i} M x^j = M x^{i+1}
    if (recent.max() * xp * x < tol) {
      if (++quiet >= kTrailingWindow) return acc.value() * (1.0 - x);
    } else {
      quiet = 0;
    }
    xp *= x;
  }
  throw std::runtime_error("abel_transform: series did not truncate within 1e8 terms");
}

double borel_transform(const Sequence& seq, double t, double tol) {
  if (!(t > 0.0)) throw std::domain_error("borel_transform: need t > 0");
  // log-space Poisson weights: log w_k = -t + k log t - lgamma(k+1)
  KahanSum acc;
  double log_t = std::log(t);
  WindowMax recent(kTrailingWindow);
  for (index_t k = 0; k < kSeriesCap; ++k) {
    double logw = -t + (double)k * log_t - std::lgamma((double)k + 1.0);
    double w = std::exp(logw);
    double sk = seq(k);
    acc.add(sk * w);
    recent.push(k, std::abs(sk));
    if ((double)k > t) {
      // beyond the mode the weights decay at ratio r = t/(k+1) < 1; tail mass
      // is below w * r/(1-r)
      double r = t / (double)(k + 1);
      if (recent.max() * w * r / (1.0 - r) < tol && (double)k > t + 10.0 * std::sqrt(t)) {
        return acc.value();
      }
    }
  }
  throw std::runtime_error("borel_transform: series did not truncate");
}

double p_method_transform(const Sequence& seq, const IntLaw& law, index_t n, double tol) {
  if (n < 1) throw std::domain_error("p_method_transform: need n >= 1");
  if (n > 2000) throw std::domain_error("p_method_transform: desk scale is n <= 2000");
  if (!(law.has_mean()) || !(law.mean() > 0.0)) {
    throw std::domain_error("p_method_transform: law must have mean > 0");
  }
  double step_trim = tol / (2.0 * (double)n);
  std::vector<double> base = law.pmf_vector(step_trim);
  std::vector<double> dist{1.0};
  index_t offset = 0;  // dist[j] = P(S = offset + j)
  for (index_t step = 0; step < n; ++step) {
    std::vector<double> next(dist.size() + base.size() - 1, 0.0);
    for (size_t i = 0; i < dist.size(); ++i) {
      if (dist[i] == 0.0) continue;
      for (size_t j = 0; j < base.size(); ++j) next[i + j] += dist[i] * base[j];
    }
    // trim both ends at step_trim cumulative mass
    size_t lo = 0, hi = next.size();
    double head = 0.0, tail = 0.0;
    while (lo < hi && head + next[lo] < step_trim) head += next[lo++];
    while (hi > lo && tail + next[hi - 1] < step_trim) tail += next[--hi];
    offset += (index_t)lo;
    dist.assign(next.begin() + (std::ptrdiff_t)lo, next.begin() + (std::ptrdiff_t)hi);
  }
  double mass = 0.0;
  for (double p : dist) mass += p;
  if (1.0 - mass >= tol) {
    throw std::runtime_error("p_method_transform: truncation lost >= tol probability mass");
  }
  KahanSum acc;
  for (size_t j = 0; j < dist.size(); ++j) {
    acc.add(seq(offset + (index_t)j) * dist[j]);
  }
  return acc.value();
}

MethodSpec MethodSpec::parse(const std::string& name) {
  MethodSpec m;
  if (name == "ell") { m.kind = Kind::ell; m.conv = EllConvention::log_n; return m; }
  if (name == "ell1") { m.kind = Kind::ell; m.conv = EllConvention::log_n_plus_1; return m; }
  if (name == "movavg") { m.kind = Kind::movavg; return m; }
  if (name == "cesaro1") { m.kind = Kind::cesaro1; return m; }
  if (name == "L") { m.kind = Kind::L; return m; }
  if (name == "abel") { m.kind = Kind::abel; return m; }
  if (name == "borel") { m.kind = Kind::borel; return m; }
  if (name == "riesz") { m.kind = Kind::riesz_log; return m; }
  if (name == "pmethod") { m.kind = Kind::pmethod; return m; }
  throw std::invalid_argument("unknown method: " + name);
}

std::string MethodSpec::name() const {
  switch (kind) {
    case Kind::ell: return conv == EllConvention::log_n ? "ell" : "ell1";
    case Kind::movavg: return "movavg";
    case Kind::cesaro1: return "cesaro1";
    case Kind::L: return "L";
    case Kind::abel: return "abel";
    case Kind::borel: return "borel";
    case Kind::riesz_log: return "riesz";
    case Kind::pmethod: return "pmethod";
  }
  return "?";
}

double evaluate_at_horizon(const Sequence& seq, const MethodSpec& m, index_t n) {
  switch (m.kind) {
    case MethodSpec::Kind::ell: return ell_transform(seq, n, m.conv);
    case MethodSpec::Kind::movavg: return movavg_transform(seq, n, m.lambda).normalized;
    case MethodSpec::Kind::cesaro1: return cesaro1_transform(seq, n);
    case MethodSpec::Kind::L: return L_transform(seq, 1.0 - 1.0 / (double)n, m.tol);
    case MethodSpec::Kind::abel: return abel_transform(seq, 1.0 - 1.0 / (double)n, m.tol);
    case MethodSpec::Kind::borel: return borel_transform(seq, (double)n, m.tol);
    case MethodSpec::Kind::riesz_log: {
      CoefficientView cv(seq);
      return riesz_log_transform(cv, std::log((double)n));
    }
    case MethodSpec::Kind::pmethod: {
      IntLaw law = IntLaw::parse(m.law_spec);
      return p_method_transform(seq, law, n, m.tol);
    }
  }
  throw std::logic_error("evaluate_at_horizon: unreachable");
}

TransformResult grid_evaluate(const Sequence& seq, const MethodSpec& m,
                              const std::vector<index_t>& horizons) {
  TransformResult out;
  out.method = m.name();
  if (m.kind == MethodSpec::Kind::movavg) out.meta["lambda"] = m.lambda;
  if (m.kind == MethodSpec::Kind::L || m.kind == MethodSpec::Kind::abel ||
      m.kind == MethodSpec::Kind::borel || m.kind == MethodSpec::Kind::pmethod) {
    out.meta["tol"] = m.tol;
  }
  index_t prev = -1;
  for (index_t n : horizons) {
    if (n <= prev) throw std::domain_error("grid_evaluate: horizons must be strictly increasing");
    prev = n;
    out.points.push_back((double)n);
    if (m.kind == MethodSpec::Kind::movavg) {
      MovAvg v = movavg_transform(seq, n, m.lambda);
      out.raw.push_back(v.raw);
      out.normalized.push_back(v.normalized);
    } else {
      double v = evaluate_at_horizon(seq, m, n);
      out.raw.push_back(v);
      out.normalized.push_back(v);
    }
  }
  return out;
}

std::vector<DriftRow> equivalence_drift(const Sequence& seq, const MethodSpec& a,
                                        const MethodSpec& b,
                                        const std::vector<index_t>& horizons) {
  std::vector<DriftRow> rows;
  for (index_t n : horizons) {
    DriftRow r;
    r.n = n;
    r.first = evaluate_at_horizon(seq, a, n);
    r.second = evaluate_at_horizon(seq, b, n);
    r.gap = std::abs(r.first - r.second);
    rows.push_back(r);
  }
  return rows;
}

double uniformity_profile(const Sequence& seq, index_t n, double lo, double hi, int grid_size) {
  if (!(hi > lo && lo > 1.0)) throw std::domain_error("uniformity_profile: need 1 < lo < hi");
  if (grid_size < 2) throw std::domain_error("uniformity_profile: need grid_size >= 2");
  auto limit = seq.limit();
  if (!limit) throw std::domain_error("uniformity_profile: sequence has no declared limit");

  // one compensated pass: U at every boundary index and at n
  std::vector<double> lambdas(static_cast<size_t>(grid_size));
  std::vector<index_t> bounds(static_cast<size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    lambdas[(size_t)j] = lo + (hi - lo) * (double)j / (double)(grid_size - 1);
    bounds[(size_t)j] = movavg_boundary(n, lambdas[(size_t)j]);
  }
  std::vector<index_t> idx(bounds.begin(), bounds.end());
  idx.push_back(n);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<double> u = u_function_at(seq, idx);
  auto u_at = [&](index_t k) {
    auto it = std::lower_bound(idx.begin(), idx.end(), k);
    return u[(size_t)(it - idx.begin())];
  };

  double ln = std::log((double)n);
  double un = u_at(n);
  double sup = 0.0;
  for (int j = 0; j < grid_size; ++j) {
    double raw = (un - u_at(bounds[(size_t)j])) / ln;
    double normalized = raw / (1.0 - 1.0 / lambdas[(size_t)j]);
    sup = std::max(sup, std::abs(normalized - *limit));
  }
  return sup;
}

}  // namespace logsum
