#include "aggmd/rrs_analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aggmd/errors.hpp"
#include "aggmd/scheduling.hpp"
#include "aggmd/specialfn.hpp"

namespace aggmd {

namespace {

void require_alpha4(const RrsAnalyticParams& p, const char* what) {
  if (p.alpha != 4.0) {
    throw UsageError(std::string(what) + ": closed form is available only for alpha = 4 (got " +
                     std::to_string(p.alpha) + "); use the Monte Carlo estimator instead");
  }
}

}  // namespace

RrsAnalyticParams derive_params(const SystemParams& params) {
  params.validate();
  if (!(params.alpha > 2.0)) {
    throw UsageError("derive_params: alpha must exceed 2 (Gamma(1 - 2/alpha) diverges at 2)");
  }
  RrsAnalyticParams p;
  p.alpha = params.alpha;
  p.p0 = occupation_probability(params.n_channels, params.m_mean);
  p.t = 0.5 * p.p0 * params.lambda_p * std::numbers::pi * params.r_cluster * params.r_cluster *
        std::tgamma(1.0 - 2.0 / params.alpha);
  p.a = p.t * p.t / 4.0;
  p.b = p.t / (2.0 * std::sqrt(std::numbers::pi));
  return p;
}

double beta_laplace(double s, const RrsAnalyticParams& p) {
  if (!(s >= 0.0)) throw UsageError("beta_laplace: s must be nonnegative");
  return std::exp(-p.t * std::pow(s, 2.0 / p.alpha));
}

double beta_pdf(double omega, const RrsAnalyticParams& p) {
  require_alpha4(p, "beta_pdf");
  if (!(omega > 0.0)) throw UsageError("beta_pdf: omega must be positive");
  if (p.t == 0.0) return 0.0;
  const double log_pdf = std::log(p.t) - p.t * p.t / (4.0 * omega) -
                         std::log(2.0 * std::sqrt(std::numbers::pi)) - 1.5 * std::log(omega);
  return std::exp(log_pdf);
}

double rrs_meta(const MetaQuery& q, const RrsAnalyticParams& p) {
  require_alpha4(p, "rrs_meta");
  if (!(q.theta >= 0.0)) throw UsageError("rrs_meta: theta must be nonnegative");
  if (!(q.x >= 0.0 && q.x <= 1.0)) throw UsageError("rrs_meta: x must lie in [0,1]");
  if (p.t == 0.0 || q.theta == 0.0 || q.x == 0.0) return 1.0;
  if (q.x == 1.0) return 0.0;
  // (1/sqrt(pi)) Gamma(1/2, a theta / -ln x) = erfc(sqrt(a theta / -ln x))
  const double arg = p.a * q.theta / -std::log(q.x);
  return specialfn::upper_incomplete_gamma(specialfn::HalfIntegerOrder(1), arg) /
         std::sqrt(std::numbers::pi);
}

double rrs_success_probability(double theta, const RrsAnalyticParams& p) {
  if (!(theta >= 0.0)) throw UsageError("rrs_success_probability: theta must be nonnegative");
  return beta_laplace(theta, p);
}

ThresholdRate rrs_max_threshold(double x, double u, const RrsAnalyticParams& p) {
  require_alpha4(p, "rrs_max_threshold");
  if (!(x > 0.0 && x < 1.0)) throw UsageError("rrs_max_threshold: x must lie in (0,1)");
  if (!(u > 0.0 && u < 1.0)) throw UsageError("rrs_max_threshold: u must lie in (0,1)");
  if (!(p.t > 0.0)) throw UsageError("rrs_max_threshold: t must be positive");
  const double z = specialfn::erfc_inv(u);
  const double scale = 2.0 * z / p.t;
  ThresholdRate out;
  out.theta = -std::log(x) * scale * scale;
  out.rate_bpcu = std::log2(1.0 + out.theta);
  return out;
}

}  // namespace aggmd
