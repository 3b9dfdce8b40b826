#include "aggmd/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aggmd/errors.hpp"

namespace aggmd {

Rng realization_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6d64u};
  return Rng(seq);
}

void SystemParams::validate() const {
  auto fail = [](const std::string& msg) { throw UsageError("invalid system parameters: " + msg); };
  if (!(lambda_p > 0.0) || !std::isfinite(lambda_p)) fail("lambda_p must be positive");
  if (n_channels < 1) fail("n_channels must be >= 1");
  if (!(m_mean >= 0.0) || !std::isfinite(m_mean)) fail("m_mean must be nonnegative");
  if (!(r_cluster > 0.0) || !std::isfinite(r_cluster)) fail("r_cluster must be positive");
  if (!(alpha >= 2.0) || !std::isfinite(alpha)) fail("alpha must be >= 2");
  if (!(sim_radius > r_cluster) || !std::isfinite(sim_radius)) fail("sim_radius must exceed r_cluster");
  if (rho != 1.0) fail("rho is normalized to 1");
}

double Interferer::ratio(double alpha) const { return std::pow(r_d / y, alpha); }

std::vector<double> interference_ratios(const TypicalLinkSample& link, double alpha) {
  std::vector<double> out;
  out.reserve(link.interferers.size());
  for (const auto& i : link.interferers) out.push_back(i.ratio(alpha));
  return out;
}

namespace {

// Uniform on (0, 1]; keeps radii strictly positive.
double open_unit(Rng& rng) {
  return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double disk_mean_count(double density, double radius) {
  return density * std::numbers::pi * radius * radius;
}

int poisson(double mean, Rng& rng) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<int>(mean)(rng);
}

}  // namespace

std::vector<Point2> sample_parents(const SystemParams& params, Rng& rng) {
  params.validate();
  const int count = poisson(disk_mean_count(params.lambda_p, params.sim_radius), rng);
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(count));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < count; ++i) {
    const double r = params.sim_radius * std::sqrt(open_unit(rng));
    const double phi = angle(rng);
    points.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  return points;
}

double sample_offspring_distance(double r_cluster, Rng& rng) {
  if (!(r_cluster > 0.0)) throw UsageError("sample_offspring_distance: r_cluster must be positive");
  return r_cluster * std::sqrt(open_unit(rng));
}

TypicalLinkSample build_typical_link_thinned(const SystemParams& params, double p0, Rng& rng) {
  params.validate();
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw UsageError("build_typical_link_thinned: p0 must lie in [0,1]");
  TypicalLinkSample link;
  const int count = poisson(disk_mean_count(p0 * params.lambda_p, params.sim_radius), rng);
  link.interferers.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Interferer it;
    it.y = params.sim_radius * std::sqrt(open_unit(rng));
    it.r_d = sample_offspring_distance(params.r_cluster, rng);
    link.interferers.push_back(it);
  }
  link.k_typical = poisson(params.m_mean, rng);
  return link;
}

TypicalLinkSample build_typical_link_full(const SystemParams& params, Scheme /*scheme*/, Rng& rng) {
  const auto parents = sample_parents(params, rng);
  TypicalLinkSample link;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double n = params.n_channels;
  for (const auto& parent : parents) {
    const int k = poisson(params.m_mean, rng);
    const double occupation = std::min<double>(k, n) / n;
    if (!(unit(rng) < occupation)) continue;
    const double r_d = sample_offspring_distance(params.r_cluster, rng);
    const double phi = angle(rng);
    const double px = parent.x + r_d * std::cos(phi);
    const double py = parent.y + r_d * std::sin(phi);
    const double y = std::hypot(px, py);
    if (!(y > 0.0)) continue;  // measure-zero coincidence with the origin
    link.interferers.push_back({r_d, y});
  }
  link.k_typical = poisson(params.m_mean, rng);
  return link;
}

}  // namespace aggmd
