#include "logsum/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace logsum {

namespace {

double halley_step(double w, double z) {
  double ew = std::exp(w);
  double f = w * ew - z;
  double wp1 = w + 1.0;
  // Halley: w' = w - f / (e^w (w+1) - (w+2) f / (2(w+1)))
  return w - f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
}

double simpson(double (*f)(double), double a, double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

double inv_log(double t) { return 1.0 / std::log(t); }

double adaptive_simpson(double (*f)(double), double a, double b, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double left = simpson(f, a, m);
  double right = simpson(f, m, b);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double lambert_w(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw std::domain_error("lambert_w: argument must be finite and >= 0");
  }
  if (z == 0.0) return 0.0;

  double w;
  if (z < 1.0) {
    w = z;
  } else if (z < std::exp(1.0)) {
    w = std::log(1.0 + z) * 0.7;
  } else {
    double lz = std::log(z);
    w = lz - std::log(lz);
  }

  const double tol = 1e-13 * std::fmax(1.0, z);
  for (int it = 0; it < 50; ++it) {
    double next = halley_step(w, z);
    if (!(next >= 0.0) || !std::isfinite(next)) break;
    w = next;
    double res = w * std::exp(w) - z;
    if (std::abs(res) <= tol) return w;
  }

  // bisection fallback on w e^w - z (monotone for w >= 0)
  double lo = 0.0, hi = std::fmax(1.0, std::log(z) + 1.0);
  while (hi * std::exp(hi) < z) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) < z) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

WEval lambert_w_eval(double z) {
  WEval e;
  e.z = z;
  e.w = lambert_w(z);
  e.residual = e.w * std::exp(e.w) - z;
  return e;
}

double phi(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("phi: argument must be finite and >= 0");
  }
  return (x + 1.0) * std::log1p(x);
}

double phi_inv(double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw std::domain_error("phi_inv: argument must be finite and >= 0");
  }
  return std::expm1(lambert_w(y));
}

double log_integral(double x) {
  if (!(x >= 2.0)) {
    throw std::domain_error("log_integral: argument must be >= 2");
  }
  if (x == 2.0) return 0.0;
  // integrand 1/log t is smooth on [2, x]; absolute tolerance well inside the
  // 1e-6 * max(1, li(x)) contract
  double tol = std::fmax(1e-12, 1e-10 * (x - 2.0));
  return adaptive_simpson(inv_log, 2.0, x, simpson(inv_log, 2.0, x), tol, 48);
}

double normal_cdf(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("normal_cdf: argument must be finite");
  }
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace logsum
