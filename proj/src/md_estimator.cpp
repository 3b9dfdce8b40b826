#include "aggmd/md_estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include <boost/multiprecision/mpfr.hpp>

#include "aggmd/crs_sum.hpp"
#include "aggmd/errors.hpp"
#include "aggmd/scheduling.hpp"
#include "aggmd/specialfn.hpp"

namespace aggmd {

namespace {

namespace bmp = boost::multiprecision;

template <unsigned Digits10>
using MpReal = bmp::number<bmp::mpfr_float_backend<Digits10, bmp::allocate_stack>, bmp::et_off>;

template <unsigned Digits10>
constexpr int tier_bits() {
  return std::numeric_limits<MpReal<Digits10>>::digits;
}

// 2^-40: allowed excursion of the CRS result outside [0,1].
constexpr double kLandingTolerance = 9.094947017729282e-13;

template <unsigned D, unsigned... Rest>
int select_tier_bits(int need) {
  if (tier_bits<D>() >= need) return tier_bits<D>();
  if constexpr (sizeof...(Rest) > 0) {
    return select_tier_bits<Rest...>(need);
  } else {
    throw PrecisionError("CRS sum needs " + std::to_string(need) +
                             " bits, beyond the largest multiprecision tier",
                         need);
  }
}

template <unsigned D, unsigned... Rest>
double success_in_tier(int need, double theta, int k, int q, std::span<const double> ratios) {
  if (tier_bits<D>() >= need) {
    return static_cast<double>(crs_success_sum<MpReal<D>>(theta, k, q, ratios));
  }
  if constexpr (sizeof...(Rest) > 0) {
    return success_in_tier<Rest...>(need, theta, k, q, ratios);
  } else {
    throw PrecisionError("CRS sum needs " + std::to_string(need) +
                             " bits, beyond the largest multiprecision tier",
                         need);
  }
}

#define AGGMD_MP_TIERS 40, 50, 60, 80, 100, 130, 170, 240, 330, 480, 640

int required_bits(int k, int n_channels, const CrsEvalSettings& settings) {
  if (settings.precision_bits < 53) throw UsageError("CrsEvalSettings: precision_bits must be >= 53");
  return std::max(settings.precision_bits, crs_required_precision_bits(k, crs_rank_threshold(k, n_channels)));
}

}  // namespace

CondSuccessSample rrs_conditional_success(double theta, const TypicalLinkSample& link, double alpha) {
  if (!(theta > 0.0)) throw UsageError("rrs_conditional_success: theta must be positive");
  // Accumulate in the log domain; the product of many factors near 1 is
  // otherwise only as accurate as the running rounding.
  double log_ps = 0.0;
  for (const auto& i : link.interferers) log_ps -= std::log1p(theta * i.ratio(alpha));
  return {std::exp(log_ps)};
}

double sample_beta(const TypicalLinkSample& link, double alpha) {
  double beta = 0.0;
  for (const auto& i : link.interferers) beta += i.ratio(alpha);
  return beta;
}

int crs_rank_threshold(int k, int n_channels) {
  if (k < 1) throw UsageError("crs_rank_threshold: k must be >= 1");
  if (n_channels < 1) throw UsageError("crs_rank_threshold: n_channels must be >= 1");
  return k >= n_channels ? k - n_channels + 1 : 1;
}

int crs_required_precision_bits(int k, int q) {
  if (k < 1 || q < 1 || q > k) throw UsageError("crs_required_precision_bits: need 1 <= q <= k");
  // log-sum-exp of ln C(k,l) + l ln 2
  double peak = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  for (int l = q; l <= k; ++l) {
    logs.push_back(specialfn::log_binomial(k, l) + l * std::numbers::ln2);
    peak = std::max(peak, logs.back());
  }
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - peak);
  const double log2_sum = (peak + std::log(acc)) / std::numbers::ln2;
  return static_cast<int>(std::ceil(log2_sum)) + 64;
}

int crs_working_precision_bits(int k, int n_channels, const CrsEvalSettings& settings) {
  return select_tier_bits<AGGMD_MP_TIERS>(required_bits(k, n_channels, settings));
}

CondSuccessSample crs_conditional_success(double theta, int k, int n_channels,
                                          std::span<const double> ratios,
                                          const CrsEvalSettings& settings) {
  if (!(theta > 0.0)) throw UsageError("crs_conditional_success: theta must be positive");
  if (k < 1) throw UsageError("crs_conditional_success: k must be >= 1");
  for (double c : ratios) {
    if (!std::isfinite(c) || c < 0.0) throw UsageError("crs_conditional_success: interference ratios must be finite");
  }
  if (ratios.empty()) return {1.0};

  const int q = crs_rank_threshold(k, n_channels);
  const int need = required_bits(k, n_channels, settings);
  const double value = success_in_tier<AGGMD_MP_TIERS>(need, theta, k, q, ratios);
  if (!(value >= -kLandingTolerance && value <= 1.0 + kLandingTolerance)) {
    throw PrecisionError("CRS success probability " + std::to_string(value) + " left [0,1] at " +
                             std::to_string(select_tier_bits<AGGMD_MP_TIERS>(need)) + " bits (K=" +
                             std::to_string(k) + ")",
                         select_tier_bits<AGGMD_MP_TIERS>(need));
  }
  return {std::clamp(value, 0.0, 1.0)};
}

CondSuccessSample crs_conditional_success(double theta, int k, int n_channels,
                                          const TypicalLinkSample& link, double alpha,
                                          const CrsEvalSettings& settings) {
  const auto ratios = interference_ratios(link, alpha);
  return crs_conditional_success(theta, k, n_channels, ratios, settings);
}

OracleEstimate crs_fading_oracle(double theta, int k, int n_channels, std::span<const double> ratios,
                                 int n_draws, Rng& rng) {
  if (n_draws < 1) throw UsageError("crs_fading_oracle: n_draws must be >= 1");
  if (k < 1) throw UsageError("crs_fading_oracle: k must be >= 1");
  if (ratios.empty()) return {1.0, 0.0};
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> gains(static_cast<std::size_t>(k));
  long successes = 0;
  for (int d = 0; d < n_draws; ++d) {
    for (auto& g : gains) g = exp1(rng);
    const auto schedule = crs_assign(gains, n_channels);
    const double weakest = gains[schedule.selected.back()];
    double interference = 0.0;
    for (double c : ratios) interference += exp1(rng) * c;
    if (weakest > theta * interference) ++successes;
  }
  const double n = n_draws;
  const double p = successes / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

OracleEstimate crs_fading_oracle(double theta, int k, int n_channels, const TypicalLinkSample& link,
                                 double alpha, int n_draws, Rng& rng) {
  const auto ratios = interference_ratios(link, alpha);
  return crs_fading_oracle(theta, k, n_channels, ratios, n_draws, rng);
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

TypicalLinkSample realize_link(const SystemParams& params, const EstimatorOptions& opts, double p0,
                               std::uint64_t index) {
  auto rng = realization_stream(opts.master_seed, index);
  auto link = opts.interference_model == InterferenceModel::Thinned
                  ? build_typical_link_thinned(params, p0, rng)
                  : build_typical_link_full(params, opts.scheme, rng);
  if (opts.scheme == Scheme::CRS) {
    if (!(params.m_mean > 0.0)) {
      throw UsageError("CRS estimation needs m_mean > 0: an empty typical cluster has no link");
    }
    std::poisson_distribution<int> cluster(params.m_mean);
    while (link.k_typical == 0) link.k_typical = cluster(rng);
  }
  return link;
}

std::vector<std::vector<double>> sample_conditional_success(const SystemParams& params,
                                                            std::span<const double> thetas,
                                                            const EstimatorOptions& opts) {
  params.validate();
  if (opts.n_realizations < 1) throw UsageError("n_realizations must be >= 1");
  for (double th : thetas) {
    if (!(th > 0.0) || !std::isfinite(th)) throw UsageError("theta must be positive and finite");
  }
  const double p0 = occupation_probability(params.n_channels, params.m_mean);
  std::vector<std::vector<double>> out(thetas.size(), std::vector<double>(opts.n_realizations));

  parallel_for(opts.n_realizations, opts.workers, [&](std::size_t r) {
    const auto link = realize_link(params, opts, p0, r);
    if (opts.scheme == Scheme::RRS) {
      for (std::size_t t = 0; t < thetas.size(); ++t) {
        out[t][r] = rrs_conditional_success(thetas[t], link, params.alpha).value;
      }
    } else {
      const auto ratios = interference_ratios(link, params.alpha);
      for (std::size_t t = 0; t < thetas.size(); ++t) {
        out[t][r] = crs_conditional_success(thetas[t], link.k_typical, params.n_channels, ratios, opts.crs).value;
      }
    }
  });
  return out;
}

void validate_x_grid(std::span<const double> x_grid) {
  if (x_grid.empty()) throw UsageError("x grid must be nonempty");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] >= 0.0 && x_grid[i] <= 1.0)) throw UsageError("x grid values must lie in [0,1]");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1])) throw UsageError("x grid must be strictly increasing");
  }
}

MetaCurve meta_curve_from_samples(double theta, std::span<const double> samples,
                                  std::span<const double> x_grid, Provenance provenance) {
  validate_x_grid(x_grid);
  if (samples.empty()) throw UsageError("meta_curve_from_samples: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  MetaCurve curve;
  curve.theta = theta;
  curve.provenance = provenance;
  curve.n_realizations = samples.size();
  std::vector<double> ci;
  const double n = static_cast<double>(samples.size());
  for (double x : x_grid) {
    // strict inequality P_s > x
    const auto above = static_cast<double>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x));
    const double p = above / n;
    curve.grid.push_back({x, p});
    ci.push_back(1.96 * std::sqrt(p * (1.0 - p) / n));
  }
  curve.ci_halfwidth = std::move(ci);
  for (std::size_t i = 1; i < curve.grid.size(); ++i) {
    if (curve.grid[i].value > curve.grid[i - 1].value) {
      throw NumericalError("empirical meta distribution is not monotone in x");
    }
  }
  return curve;
}

MetaCurve estimate_meta_curve(const SystemParams& params, double theta, std::span<const double> x_grid,
                              const EstimatorOptions& opts) {
  validate_x_grid(x_grid);
  const double thetas[] = {theta};
  const auto samples = sample_conditional_success(params, thetas, opts);
  return meta_curve_from_samples(theta, samples.front(), x_grid,
                                 opts.scheme == Scheme::CRS ? Provenance::SemiAnalytic : Provenance::Empirical);
}

double empirical_success_probability(std::span<const double> samples) {
  if (samples.empty()) throw UsageError("empirical_success_probability: no samples");
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

}  // namespace aggmd
