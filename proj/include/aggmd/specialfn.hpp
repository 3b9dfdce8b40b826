#pragma once

// Special functions used by the closed forms: half-integer upper incomplete
// gamma, erfc and its inverse, and log-binomial coefficients.

#include <cstdint>

namespace aggmd::specialfn {

/// Order s = twice_order / 2 of a half-integer gamma function.
class HalfIntegerOrder {
 public:
  explicit HalfIntegerOrder(int twice_order);

  int twice_order() const noexcept { return twice_order_; }
  double value() const noexcept { return 0.5 * twice_order_; }

 private:
  int twice_order_;
};

/// Gamma(s, x) = int_x^inf u^(s-1) e^-u du for half-integer s.
///
/// Odd twice_order starts from Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)), even
/// twice_order from Gamma(1, x) = e^-x; both climb with
/// Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x. All recurrence terms are
/// nonnegative, so relative accuracy is kept for every x >= 0.
double upper_incomplete_gamma(HalfIntegerOrder order, double x);

double erfc(double z);

/// Inverse of erfc on (0, 2).
double erfc_inv(double y);

/// ln C(n, k).
double log_binomial(std::int64_t n, std::int64_t k);

}  // namespace aggmd::specialfn
