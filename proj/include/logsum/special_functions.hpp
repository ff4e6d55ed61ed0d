#pragma once

namespace logsum {

struct WEval {
  double z = 0.0;
  double w = 0.0;
  double residual = 0.0;  // w*exp(w) - z
};

// Principal-branch Lambert W on [0, inf). Halley iteration from a log-based
// initial guess, bisection fallback. Contract: |w e^w - z| <= 1e-12 max(1,z).
double lambert_w(double z);
WEval lambert_w_eval(double z);

// phi(x) = (x+1) log(x+1), strictly increasing on [0, inf), phi(0)=0.
double phi(double x);

// phi^{-1}(y) = e^{W(y)} - 1.
double phi_inv(double y);

// li(x) = integral_2^x dt/log t, x >= 2. Adaptive Simpson quadrature.
double log_integral(double x);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace logsum
