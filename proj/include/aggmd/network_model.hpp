#pragma once

// Scenario parameters and samplers for the clustered uplink deployment:
// HPPP aggregators, Matern-cluster MTD offspring, and the interferer field
// seen by the typical aggregator at the origin.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace aggmd {

/// Random stream used by every sampler.
using Rng = std::mt19937_64;

/// Independent stream for one realization, keyed by (master_seed, index).
/// Results never depend on which worker evaluates the realization.
Rng realization_stream(std::uint64_t master_seed, std::uint64_t index);

enum class Scheme { RRS, CRS };
enum class InterferenceModel { Thinned, Full };

struct SystemParams {
  double lambda_p = 3e-6;     ///< aggregator density [1/m^2]
  int n_channels = 20;        ///< orthogonal channels per aggregator
  double m_mean = 60.0;       ///< mean MTDs per cluster
  double r_cluster = 40.0;    ///< cluster radius [m]
  double alpha = 4.0;         ///< path-loss exponent
  double sim_radius = 3000.0; ///< simulation disk radius [m]
  double rho = 1.0;           ///< received-power target; cancels out of the SIR

  /// Throws UsageError when an invariant is violated.
  void validate() const;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// An interfering MTD. `r_d` is the distance to its own aggregator, `y` the
/// distance to the typical aggregator. With inversion power control its
/// normalized interference is g (r_d / y)^alpha.
struct Interferer {
  double r_d = 0.0;
  double y = 0.0;

  double ratio(double alpha) const;
};

struct TypicalLinkSample {
  std::vector<Interferer> interferers;
  int k_typical = 0;  ///< MTDs requesting service in the typical cluster
};

/// (r_d / y)^alpha for every interferer of the link.
std::vector<double> interference_ratios(const TypicalLinkSample& link, double alpha);

std::vector<Point2> sample_parents(const SystemParams& params, Rng& rng);

/// Offspring distance with density 2 r / R_d^2 on (0, R_d].
double sample_offspring_distance(double r_cluster, Rng& rng);

/// Interferers as an HPPP of density p0 * lambda_p on the simulation disk.
TypicalLinkSample build_typical_link_thinned(const SystemParams& params, double p0, Rng& rng);

/// Interferers from explicit clusters: every aggregator occupies the typical
/// channel with probability min(K_i, N) / N, and its MTD sits at an offspring
/// displacement from the aggregator. Occupation does not depend on `scheme`.
TypicalLinkSample build_typical_link_full(const SystemParams& params, Scheme scheme, Rng& rng);

}  // namespace aggmd
