#include "logsum/law.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "logsum/kahan.hpp"

namespace logsum {

namespace {

constexpr std::int64_t kDenseMax = 1 << 16;    // exact cumulative up to here
constexpr std::int64_t kSampleCap = 1 << 27;   // ~1.34e8

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int depth) {
  auto simp = [&f](double lo, double hi) {
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
  };
  std::function<double(double, double, double, double, int)> rec =
      [&](double lo, double hi, double wh, double tl, int d) -> double {
    double mid = 0.5 * (lo + hi);
    double l = simp(lo, mid), r = simp(mid, hi);
    double delta = l + r - wh;
    if (d <= 0 || std::abs(delta) <= 15.0 * tl) return l + r + delta / 15.0;
    return rec(lo, mid, l, 0.5 * tl, d - 1) + rec(mid, hi, r, 0.5 * tl, d - 1);
  };
  return rec(a, b, simp(a, b), tol, depth);
}

}  // namespace

double IntLaw::zipf_weight(double t) const {
  double lt = std::log(t);
  switch (family_) {
    case Family::zipf_plain: return 1.0 / (t * t);
    case Family::zipf_log1: return 1.0 / (t * t * lt);
    case Family::zipf_log2: return 1.0 / (t * t * lt * lt);
    default: return 0.0;
  }
}

double IntLaw::zipf_tail_integral(double a) const {
  if (family_ == Family::zipf_plain) return 1.0 / a;
  // substitute u = 1/t: integral_0^{1/a} du / (-log u)^q, integrand -> 0 at 0
  int q = family_ == Family::zipf_log1 ? 1 : 2;
  auto f = [q](double u) {
    if (u <= 0.0) return 0.0;
    double l = -std::log(u);
    return q == 1 ? 1.0 / l : 1.0 / (l * l);
  };
  return adaptive_simpson(f, 0.0, 1.0 / a, 1e-14 / a, 50);
}

IntLaw IntLaw::two_point(std::int64_t v0, std::int64_t v1, double p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::domain_error("two_point: p must be in [0,1]");
  IntLaw law;
  law.family_ = Family::two_point;
  law.v0_ = v0;
  law.v1_ = v1;
  law.p1_ = p1;
  law.mean_ = (1.0 - p1) * (double)v0 + p1 * (double)v1;
  law.support_min_ = std::min(v0, v1);
  if (v0 == v1) {
    law.atoms_ = {{v0, 1.0}};
  } else {
    law.atoms_ = {{v0, 1.0 - p1}, {v1, p1}};
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "two_point:%lld,%lld,%g", (long long)v0, (long long)v1, p1);
  law.name_ = buf;
  return law;
}

IntLaw IntLaw::poisson1() {
  IntLaw law;
  law.family_ = Family::poisson_like;
  law.mean_ = 1.0;
  law.support_min_ = 0;
  law.name_ = "poisson1";
  double w = std::exp(-1.0);
  double cum = 0.0;
  for (int k = 0; k < 200 && w > 0.0; ++k) {
    cum += w;
    law.dense_cum_.push_back(cum);
    w /= (double)(k + 1);
  }
  return law;
}

IntLaw IntLaw::zipf_plain(bool sign) {
  IntLaw law;
  law.family_ = Family::zipf_plain;
  return finish_zipf(std::move(law), sign, "zipf_plain", false, false);
}

IntLaw IntLaw::zipf_log1(bool sign) {
  IntLaw law;
  law.family_ = Family::zipf_log1;
  return finish_zipf(std::move(law), sign, "zipf_log1", false, true);
}

IntLaw IntLaw::zipf_log2(bool sign) {
  IntLaw law;
  law.family_ = Family::zipf_log2;
  return finish_zipf(std::move(law), sign, "zipf_log2", true, true);
}

IntLaw IntLaw::finish_zipf(IntLaw law, bool sign, const char* base_name,
                           bool has_mean, bool has_llogl) {
  law.signed_ = sign;
  law.has_mean_ = has_mean;
  law.has_llogl_ = has_llogl;
  law.support_min_ = sign ? -kSampleCap : 2;
  law.name_ = std::string(base_name) + (sign ? ",signed" : "");
  law.dense_lo_ = 2;
  law.cap_ = kSampleCap;
  KahanSum cum;
  law.dense_cum_.clear();
  law.dense_cum_.reserve((size_t)(kDenseMax - 1));
  for (std::int64_t n = 2; n <= kDenseMax; ++n) {
    cum.add(law.zipf_weight((double)n));
    law.dense_cum_.push_back(cum.value());
  }
  law.above_dense_ = law.zipf_tail_integral((double)kDenseMax + 0.5);
  law.norm_ = cum.value() + law.above_dense_;
  law.cap_bias_ = law.zipf_tail_integral((double)law.cap_ + 0.5) / law.norm_;
  if (has_mean && !sign) {
    KahanSum m;
    for (std::int64_t n = 2; n <= kDenseMax; ++n) m.add((double)n * law.zipf_weight((double)n));
    // tail integral of t * 1/(t^2 log^2 t) is 1/log a
    law.mean_ = (m.value() + 1.0 / std::log((double)kDenseMax + 0.5)) / law.norm_;
  } else {
    law.mean_ = 0.0;
  }
  return law;
}

IntLaw IntLaw::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  bool sign = false;
  if (auto pos = head.find(",signed"); pos != std::string::npos) {
    sign = true;
    head.erase(pos);
  }
  if (head == "two_point") {
    long long v0, v1;
    double p;
    if (std::sscanf(args.c_str(), "%lld,%lld,%lf", &v0, &v1, &p) != 3) {
      throw std::invalid_argument("two_point requires v0,v1,p");
    }
    return two_point(v0, v1, p);
  }
  if (head == "fair_pm1") return two_point(-1, 1, 0.5);
  if (head == "poisson1") return poisson1();
  if (head == "zipf_plain") return zipf_plain(sign);
  if (head == "zipf_log1") return zipf_log1(sign);
  if (head == "zipf_log2") return zipf_log2(sign);
  throw std::invalid_argument("unknown law spec: " + spec);
}

bool IntLaw::is_symmetric() const {
  if (signed_) return true;
  return family_ == Family::two_point && v0_ == -v1_ && p1_ == 0.5;
}

double IntLaw::mean() const {
  if (is_symmetric()) return 0.0;
  if (!has_mean_) throw std::domain_error("mean: law " + name_ + " has no finite mean");
  return mean_;
}

double IntLaw::pmf(std::int64_t n) const {
  switch (family_) {
    case Family::two_point:
      if (n == v1_) return p1_ + (v0_ == v1_ ? 1.0 - p1_ : 0.0);
      if (n == v0_) return 1.0 - p1_;
      return 0.0;
    case Family::poisson_like:
      if (n < 0 || (size_t)n >= dense_cum_.size()) return 0.0;
      return n == 0 ? dense_cum_[0] : dense_cum_[(size_t)n] - dense_cum_[(size_t)n - 1];
    default:
      if (n < 2) return 0.0;
      return zipf_weight((double)n) / norm_;
  }
}

double IntLaw::tail(double t) const {
  switch (family_) {
    case Family::two_point: {
      double acc = 0.0;
      if (std::abs((double)v0_) > t) acc += 1.0 - p1_;
      if (std::abs((double)v1_) > t) acc += p1_;
      return acc;
    }
    case Family::poisson_like: {
      if (t < 0.0) return 1.0;
      std::int64_t k = (std::int64_t)std::floor(t);
      if ((size_t)k >= dense_cum_.size()) return 0.0;
      return 1.0 - dense_cum_[(size_t)k];
    }
    default: {
      if (t < 2.0) return 1.0;
      std::int64_t k = (std::int64_t)std::floor(t);
      if (k <= kDenseMax) {
        return (dense_cum_.back() - dense_cum_[(size_t)(k - 2)] + above_dense_) / norm_;
      }
      return zipf_tail_integral((double)k + 0.5) / norm_;
    }
  }
}

std::int64_t IntLaw::sample(SplitMix64& rng) const {
  std::int64_t mag;
  double u = rng.next_double();
  switch (family_) {
    case Family::two_point:
      return u < p1_ ? v1_ : v0_;  // two_point values carry their own sign
    case Family::poisson_like: {
      auto it = std::lower_bound(dense_cum_.begin(), dense_cum_.end(), u);
      mag = (std::int64_t)(it - dense_cum_.begin());
      if ((size_t)mag >= dense_cum_.size()) mag = (std::int64_t)dense_cum_.size() - 1;
      break;
    }
    default: {
      double target = u * norm_;
      if (target <= dense_cum_.back()) {
        auto it = std::lower_bound(dense_cum_.begin(), dense_cum_.end(), target);
        mag = 2 + (std::int64_t)(it - dense_cum_.begin());
      } else {
        // bracket [b, 2b] via analytic tails, then scan exact weights
        std::int64_t lo = kDenseMax;
        double cum_lo = norm_ - above_dense_;
        while (lo < cap_) {
          std::int64_t hi = lo * 2;
          double cum_hi = norm_ - zipf_tail_integral((double)hi + 0.5);
          if (target <= cum_hi || hi >= cap_) break;
          lo = hi;
          cum_lo = cum_hi;
        }
        double cum = cum_lo;
        mag = lo;
        while (cum < target && mag < cap_) {
          ++mag;
          cum += zipf_weight((double)mag);
        }
      }
      break;
    }
  }
  if (signed_ && rng.next_sign_bit()) return -mag;
  return mag;
}

std::vector<double> IntLaw::pmf_vector(double trim_tol) const {
  if (support_min_ < 0) {
    throw std::domain_error("pmf_vector: law has negative support, not usable for the P-method");
  }
  std::vector<double> v;
  switch (family_) {
    case Family::two_point: {
      v.assign((size_t)std::max(v0_, v1_) + 1, 0.0);
      v[(size_t)v0_] += 1.0 - p1_;
      v[(size_t)v1_] += p1_;
      return v;
    }
    case Family::poisson_like: {
      for (size_t k = 0; k < dense_cum_.size(); ++k) {
        v.push_back(pmf((std::int64_t)k));
        if (1.0 - dense_cum_[k] < trim_tol) break;
      }
      return v;
    }
    default: {
      v.assign(2, 0.0);
      for (std::int64_t n = 2; n <= cap_; ++n) {
        v.push_back(pmf(n));
        if (tail((double)n) < trim_tol) break;
      }
      return v;
    }
  }
}

}  // namespace logsum
