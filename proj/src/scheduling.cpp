#include "aggmd/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "aggmd/errors.hpp"
#include "aggmd/specialfn.hpp"

namespace aggmd {

double occupation_probability(int n_channels, double m_mean) {
  if (n_channels < 1) throw UsageError("occupation_probability: n_channels must be >= 1");
  if (!(m_mean >= 0.0) || !std::isfinite(m_mean)) {
    throw UsageError("occupation_probability: m_mean must be finite and nonnegative");
  }
  if (m_mean == 0.0) return 0.0;
  // min(K, 1) = 1{K >= 1}
  if (n_channels == 1) return -std::expm1(-m_mean);

  const double n = n_channels;
  const double q = boost::math::gamma_q(n + 1.0, m_mean);
  const double log_pmf = n * std::log(m_mean) - m_mean - boost::math::lgamma(n + 1.0);
  const double pmf = std::exp(log_pmf);
  // 1 - Gamma(N+1,m)/N! + [m Gamma(N+1,m) - e^-m m^{N+1}] / ((N-1)! N^2),
  // with N!/((N-1)! N^2) = 1/N.
  double p0 = 1.0 - q + (m_mean / n) * (q - pmf);

  constexpr double kBoundarySlack = 1e-12;
  if (p0 < 0.0 && p0 > -kBoundarySlack) p0 = 0.0;
  if (p0 > 1.0 && p0 < 1.0 + kBoundarySlack) p0 = 1.0;
  if (p0 < 0.0 || p0 > 1.0) {
    throw NumericalError("occupation_probability left [0,1]: " + std::to_string(p0));
  }
  return p0;
}

ScheduleOutcome rrs_assign(int k, int n_channels, Rng& rng) {
  if (k < 0) throw UsageError("rrs_assign: k must be nonnegative");
  if (n_channels < 1) throw UsageError("rrs_assign: n_channels must be >= 1");
  ScheduleOutcome out;
  out.scheme = Scheme::RRS;
  std::vector<std::size_t> all(static_cast<std::size_t>(k));
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto take = static_cast<std::size_t>(std::min(k, n_channels));
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(take);
  out.selected = std::move(all);
  return out;
}

ScheduleOutcome crs_assign(std::span<const double> gains, int n_channels) {
  if (n_channels < 1) throw UsageError("crs_assign: n_channels must be >= 1");
  for (double g : gains) {
    if (!std::isfinite(g)) throw UsageError("crs_assign: gains must be finite");
  }
  ScheduleOutcome out;
  out.scheme = Scheme::CRS;
  std::vector<std::size_t> idx(gains.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto take = std::min(gains.size(), static_cast<std::size_t>(n_channels));
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (gains[a] != gains[b]) return gains[a] > gains[b];
                      return a < b;
                    });
  idx.resize(take);
  out.selected = std::move(idx);
  return out;
}

double order_statistic_cdf(int k, int nu, double v) {
  if (k < 1) throw UsageError("order_statistic_cdf: k must be >= 1");
  if (nu < 1 || nu > k) {
    throw UsageError("order_statistic_cdf: nu must lie in [1, k], got " + std::to_string(nu));
  }
  if (std::isnan(v)) throw UsageError("order_statistic_cdf: v is NaN");
  if (v <= 0.0) return 0.0;
  if (std::isinf(v)) return 1.0;

  const int q = k - nu + 1;
  const double log_f = std::log(-std::expm1(-v));  // ln(1 - e^-v)
  const double log_sf = -v;                        // ln(e^-v)
  double sum = 0.0;
  for (int l = q; l <= k; ++l) {
    sum += std::exp(specialfn::log_binomial(k, l) + l * log_f + (k - l) * log_sf);
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace aggmd
