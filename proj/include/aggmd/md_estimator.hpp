#pragma once

// Per-realization conditional success probabilities and empirical meta
// distribution curves.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aggmd/network_model.hpp"

namespace aggmd {

/// Conditional success probability of one network realization.
struct CondSuccessSample {
  double value = 1.0;
};

enum class Provenance { Analytic, SemiAnalytic, Empirical };

struct MetaCurvePoint {
  double x = 0.0;
  double value = 0.0;
};

struct MetaCurve {
  double theta = 1.0;
  std::vector<MetaCurvePoint> grid;
  Provenance provenance = Provenance::Empirical;
  std::optional<std::vector<double>> ci_halfwidth;  ///< 95% normal-approximation
  std::size_t n_realizations = 0;
};

struct CrsEvalSettings {
  int precision_bits = 53;  ///< lower bound; the evaluator raises it as K demands
  int oracle_fading_draws = 100000;
};

struct OracleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// P_s = prod_i [1 + theta (r_d,i / y_i)^alpha]^{-1}, exact over Rayleigh fading.
CondSuccessSample rrs_conditional_success(double theta, const TypicalLinkSample& link, double alpha);

/// beta = sum_i (r_d,i / y_i)^alpha.
double sample_beta(const TypicalLinkSample& link, double alpha);

/// Rank threshold of the worst scheduled link: K - N + 1 when K >= N, else 1.
int crs_rank_threshold(int k, int n_channels);

/// Bits needed to evaluate the CRS sum for (k, q) to 2^-64 relative to its
/// largest partial term: ceil(log2 sum_{l=q}^{k} C(k,l) 2^l) + 64. Never below
/// max_l log2 C(k,l) + 64.
int crs_required_precision_bits(int k, int q);

/// Mantissa bits of the multiprecision tier chosen for a request.
int crs_working_precision_bits(int k, int n_channels, const CrsEvalSettings& settings);

/// Success probability of the weakest scheduled link under CRS, exact over
/// fading and scheduling, evaluated in extended precision. Throws
/// PrecisionError if the result leaves [0,1] by more than 2^-40.
CondSuccessSample crs_conditional_success(double theta, int k, int n_channels,
                                          const TypicalLinkSample& link, double alpha,
                                          const CrsEvalSettings& settings = {});

/// Same as above on precomputed interference ratios.
CondSuccessSample crs_conditional_success(double theta, int k, int n_channels,
                                          std::span<const double> ratios,
                                          const CrsEvalSettings& settings = {});

/// Simulates fading and channel-aware selection explicitly.
OracleEstimate crs_fading_oracle(double theta, int k, int n_channels, std::span<const double> ratios,
                                 int n_draws, Rng& rng);

OracleEstimate crs_fading_oracle(double theta, int k, int n_channels, const TypicalLinkSample& link,
                                 double alpha, int n_draws, Rng& rng);

struct EstimatorOptions {
  Scheme scheme = Scheme::RRS;
  InterferenceModel interference_model = InterferenceModel::Thinned;
  std::size_t n_realizations = 100000;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  CrsEvalSettings crs;
};

/// Runs `fn(i)` for i in [0, n) on `workers` threads. The first exception
/// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

/// Builds the typical link of realization `index` (the CRS cluster size is
/// redrawn until K >= 1).
TypicalLinkSample realize_link(const SystemParams& params, const EstimatorOptions& opts, double p0,
                               std::uint64_t index);

/// Conditional success values, result[theta_index][realization]. The same
/// geometry is used for every theta.
std::vector<std::vector<double>> sample_conditional_success(const SystemParams& params,
                                                            std::span<const double> thetas,
                                                            const EstimatorOptions& opts);

/// Empirical CCDF P(P_s > x) over `x_grid` with 95% binomial half-widths.
MetaCurve meta_curve_from_samples(double theta, std::span<const double> samples,
                                  std::span<const double> x_grid, Provenance provenance);

MetaCurve estimate_meta_curve(const SystemParams& params, double theta, std::span<const double> x_grid,
                              const EstimatorOptions& opts);

double empirical_success_probability(std::span<const double> samples);

/// Rejects grids that are empty, not strictly increasing, or outside [0,1].
void validate_x_grid(std::span<const double> x_grid);

}  // namespace aggmd
