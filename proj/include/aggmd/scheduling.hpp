#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aggmd/network_model.hpp"

namespace aggmd {

struct ScheduleOutcome {
  std::vector<std::size_t> selected;  ///< distinct MTD indices, min(K, N) of them
  Scheme scheme = Scheme::RRS;
};

/// Average channel occupation P0 = E[min(K, N)] / N for K ~ Poisson(m).
///
/// Evaluated through the regularized upper gamma Q(N+1, m) = Gamma(N+1, m)/N!
/// and the log-domain Poisson mass m^N e^-m / N!, so it stays finite for N
/// and m in the thousands.
double occupation_probability(int n_channels, double m_mean);

/// Uniformly random subset of min(k, N) MTDs; no channel state is consulted.
ScheduleOutcome rrs_assign(int k, int n_channels, Rng& rng);

/// The min(K, N) MTDs with the largest gains; ties go to the lower index.
/// Returned in descending gain order.
ScheduleOutcome crs_assign(std::span<const double> gains, int n_channels);

/// CDF of the nu-th largest of k i.i.d. unit-mean exponentials:
/// sum_{l=q}^{k} C(k,l) F^l (1-F)^{k-l}, q = k - nu + 1, F = 1 - e^-v.
double order_statistic_cdf(int k, int nu, double v);

}  // namespace aggmd
