#pragma once

// Independent reference computations used only by the test suites. None of
// these route through the library's evaluation paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace aggmd::oracle {

/// Adaptive Gauss-Kronrod on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol, &err);
}

/// int_0^inf f(w) dw through w = e^z over z in [z_lo, z_hi], split into unit
/// pieces so sharply peaked integrands are resolved.
inline double integrate_half_line_log(const std::function<double(double)>& f, double z_lo, double z_hi) {
  double total = 0.0;
  for (double z = z_lo; z < z_hi; z += 1.0) {
    const double b = std::min(z + 1.0, z_hi);
    total += integrate([&](double s) { const double w = std::exp(s); return f(w) * w; }, z, b);
  }
  return total;
}

/// Root of a decreasing function on [lo, hi] by plain bisection.
inline double bisect_decreasing(const std::function<double(double)>& f, double target, double lo, double hi,
                                int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// E[min(K, N)] / N for K ~ Poisson(m) by direct summation until the
/// remaining Poisson mass drops below 1e-17.
inline double occupation_series(int n, double m) {
  if (m == 0.0) return 0.0;
  long double pk = std::exp(-static_cast<long double>(m));
  long double cdf = 0.0L;
  long double sum = 0.0L;
  for (int k = 0;; ++k) {
    if (k > 0) pk *= static_cast<long double>(m) / k;
    cdf += pk;
    sum += (static_cast<long double>(std::min(k, n)) / n) * pk;
    if (k > n && k > m && 1.0L - cdf < 1e-17L) {
      sum += 1.0L - cdf;  // remaining mass all has min(k,N)/N = 1
      break;
    }
    if (k > 100000) break;
  }
  return static_cast<double>(sum);
}

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace aggmd::oracle
