#pragma once

// Closed-form results for random resource scheduling.
//
// The interference functional beta = sum_i (r_d,i / y_i)^alpha has the
// stretched-exponential Laplace transform exp(-t s^(2/alpha)) with
// t = P0 lambda_p pi R_d^2 Gamma(1 - 2/alpha) / 2. For alpha = 4 beta is
// one-sided Levy with density t e^{-t^2/(4w)} / (2 sqrt(pi) w^{3/2}), and the
// meta distribution of the approximated conditional success e^{-beta theta}
// is
//
//   F(theta, x) = P(beta < -ln x / theta) = erfc( (t/2) sqrt(theta / -ln x) ).
//
// Closed forms other than the Laplace transform are only available for
// alpha = 4; other exponents go through the Monte Carlo estimator.

#include "aggmd/network_model.hpp"

namespace aggmd {

struct RrsAnalyticParams {
  double p0 = 0.0;
  double t = 0.0;
  double a = 0.0;  ///< t^2 / 4
  double b = 0.0;  ///< t / (2 sqrt(pi))
  double alpha = 4.0;
};

struct MetaQuery {
  double theta = 1.0;  ///< linear SIR threshold
  double x = 0.5;      ///< target reliability
};

struct ThresholdRate {
  double theta = 0.0;
  double rate_bpcu = 0.0;  ///< log2(1 + theta)
};

RrsAnalyticParams derive_params(const SystemParams& params);

/// E[exp(-s beta)] = exp(-t s^(2/alpha)).
double beta_laplace(double s, const RrsAnalyticParams& p);

double beta_pdf(double omega, const RrsAnalyticParams& p);

double rrs_meta(const MetaQuery& q, const RrsAnalyticParams& p);

/// Standard success probability p_s(theta) = exp(-t theta^(2/alpha)).
double rrs_success_probability(double theta, const RrsAnalyticParams& p);

/// Largest theta with rrs_meta(theta, x) = u, and its rate.
ThresholdRate rrs_max_threshold(double x, double u, const RrsAnalyticParams& p);

}  // namespace aggmd
