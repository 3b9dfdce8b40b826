#include "aggmd/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "aggmd/errors.hpp"

namespace aggmd::specialfn {

HalfIntegerOrder::HalfIntegerOrder(int twice_order) : twice_order_(twice_order) {
  if (twice_order < 1) {
    throw UsageError("half-integer order requires twice_order >= 1, got " +
                     std::to_string(twice_order));
  }
}

double upper_incomplete_gamma(HalfIntegerOrder order, double x) {
  if (!std::isfinite(x)) throw UsageError("upper_incomplete_gamma: x must be finite");
  if (x < 0.0) throw UsageError("upper_incomplete_gamma: x must be nonnegative");

  double s;
  double value;
  if (order.twice_order() % 2 == 1) {
    s = 0.5;
    value = std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
  } else {
    s = 1.0;
    value = std::exp(-x);
  }
  const double log_x = std::log(x);
  while (s < order.value()) {
    // x^s e^-x, zero at x = 0 for every s > 0.
    const double tail = x > 0.0 ? std::exp(s * log_x - x) : 0.0;
    value = s * value + tail;
    s += 1.0;
  }
  return value;
}

double erfc(double z) {
  if (!std::isfinite(z)) throw UsageError("erfc: argument must be finite");
  return std::erfc(z);
}

double erfc_inv(double y) {
  if (!(y > 0.0 && y < 2.0)) {
    throw UsageError("erfc_inv: argument must lie in (0, 2), got " + std::to_string(y));
  }
  double z = boost::math::erfc_inv(y);
  // One Newton step on erfc(z) - y; erfc'(z) = -2/sqrt(pi) e^{-z^2}.
  const double slope = -2.0 / std::sqrt(std::numbers::pi) * std::exp(-z * z);
  if (slope != 0.0) {
    const double step = (std::erfc(z) - y) / slope;
    if (std::isfinite(step)) z -= step;
  }
  return z;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw UsageError("log_binomial: arguments must be nonnegative");
  if (k > n) throw UsageError("log_binomial: k must not exceed n");
  if (k == 0 || k == n) return 0.0;
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return boost::math::lgamma(nd + 1.0) - boost::math::lgamma(kd + 1.0) -
         boost::math::lgamma(nd - kd + 1.0);
}

}  // namespace aggmd::specialfn
