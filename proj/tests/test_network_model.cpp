#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "aggmd/errors.hpp"
#include "aggmd/network_model.hpp"
#include "aggmd/scheduling.hpp"
#include "oracles.hpp"

using namespace aggmd;

namespace {

double disk_mean(double density, double radius) { return density * std::numbers::pi * radius * radius; }

struct CountStats {
  double mean = 0.0;
  double var = 0.0;
};

template <class F>
CountStats count_stats(int draws, F&& count_of) {
  std::vector<double> c(static_cast<std::size_t>(draws));
  for (int i = 0; i < draws; ++i) c[static_cast<std::size_t>(i)] = count_of(i);
  const double mean = std::accumulate(c.begin(), c.end(), 0.0) / draws;
  double var = 0.0;
  for (double v : c) var += (v - mean) * (v - mean);
  return {mean, var / (draws - 1)};
}

}  // namespace

TEST_CASE("reference parameters give about 84.8 aggregators on the disk") {
  SystemParams p;
  CHECK(disk_mean(p.lambda_p, p.sim_radius) == doctest::Approx(84.823).epsilon(1e-4));
}

TEST_CASE("sample_parents count is Poisson with the disk mean") {
  SystemParams p;
  const double mean = disk_mean(p.lambda_p, p.sim_radius);
  const int draws = 10000;
  const auto s = count_stats(draws, [&](int i) {
    auto rng = realization_stream(7, static_cast<std::uint64_t>(i));
    return static_cast<double>(sample_parents(p, rng).size());
  });
  CHECK(std::abs(s.mean - mean) < 3.0 * std::sqrt(mean / draws));
  CHECK(s.var == doctest::Approx(mean).epsilon(0.05));
}

TEST_CASE("sample_parents points are uniform on the disk") {
  SystemParams p;
  std::vector<double> radii;
  for (int i = 0; i < 200; ++i) {
    auto rng = realization_stream(8, static_cast<std::uint64_t>(i));
    for (const auto& pt : sample_parents(p, rng)) radii.push_back(std::hypot(pt.x, pt.y));
  }
  for (double r : radii) REQUIRE(r <= p.sim_radius);
  const double d = oracle::ks_statistic(radii, [&](double r) { return (r / p.sim_radius) * (r / p.sim_radius); });
  CHECK(d < oracle::ks_critical_1pct(radii.size()));
}

TEST_CASE("vanishing density gives an empty deployment") {
  SystemParams p;
  p.lambda_p = 1e-18;
  auto rng = realization_stream(1, 0);
  CHECK(sample_parents(p, rng).empty());
}

TEST_CASE("offspring distance has density 2r/R_d^2") {
  const double rd = 40.0;
  auto rng = realization_stream(3, 0);
  const int n = 100000;
  std::vector<double> r(n);
  for (auto& v : r) v = sample_offspring_distance(rd, rng);
  for (double v : r) REQUIRE((v > 0.0 && v <= rd));
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
  // E[r] = 2R/3, Var[r] = R^2/2 - 4R^2/9 = R^2/18
  const double sigma = rd / std::sqrt(18.0) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean - 2.0 * rd / 3.0) < 3.0 * sigma);
  CHECK(2.0 * rd / 3.0 == doctest::Approx(26.6667).epsilon(1e-4));
  const double d = oracle::ks_statistic(r, [&](double v) { return (v / rd) * (v / rd); });
  CHECK(d < oracle::ks_critical_1pct(r.size()));
  CHECK_THROWS_AS(sample_offspring_distance(0.0, rng), UsageError);
}

TEST_CASE("thinned link: empty at p0 = 0 and Poisson count otherwise") {
  SystemParams p;
  auto rng = realization_stream(4, 0);
  CHECK(build_typical_link_thinned(p, 0.0, rng).interferers.empty());
  CHECK_THROWS_AS(build_typical_link_thinned(p, 1.5, rng), UsageError);

  const double p0 = 0.37;
  const double mean = disk_mean(p0 * p.lambda_p, p.sim_radius);
  const int draws = 10000;
  const auto s = count_stats(draws, [&](int i) {
    auto r = realization_stream(5, static_cast<std::uint64_t>(i));
    return static_cast<double>(build_typical_link_thinned(p, p0, r).interferers.size());
  });
  CHECK(std::abs(s.mean - mean) < 3.0 * std::sqrt(mean / draws));

  // p0 close to one at the reference parameters
  CHECK(disk_mean(occupation_probability(20, 60.0) * p.lambda_p, p.sim_radius) ==
        doctest::Approx(84.82).epsilon(1e-3));
}

TEST_CASE("thinned link: nearest-interferer distance follows the HPPP law") {
  SystemParams p;
  const double p0 = 1.0;
  std::vector<double> nearest;
  for (int i = 0; i < 5000; ++i) {
    auto rng = realization_stream(6, static_cast<std::uint64_t>(i));
    const auto link = build_typical_link_thinned(p, p0, rng);
    if (link.interferers.empty()) continue;
    double y = INFINITY;
    for (const auto& it : link.interferers) {
      REQUIRE(it.y > 0.0);
      REQUIRE(it.y <= p.sim_radius);
      REQUIRE((it.r_d > 0.0 && it.r_d <= p.r_cluster));
      y = std::min(y, it.y);
    }
    nearest.push_back(y);
  }
  const double lam = p0 * p.lambda_p;
  // The nonempty-disk condition changes the CDF by exp(-84.8), far below tolerance.
  const double d = oracle::ks_statistic(nearest, [&](double y) { return 1.0 - std::exp(-lam * std::numbers::pi * y * y); });
  CHECK(d < oracle::ks_critical_1pct(nearest.size()));
}

TEST_CASE("full link: no interferers without MTDs, none with unbounded channels") {
  SystemParams p;
  p.m_mean = 0.0;
  auto rng = realization_stream(9, 0);
  CHECK(build_typical_link_full(p, Scheme::RRS, rng).interferers.empty());

  SystemParams q;
  q.n_channels = 1000000;
  q.m_mean = 1.0;
  double total = 0;
  for (int i = 0; i < 200; ++i) {
    auto r = realization_stream(10, static_cast<std::uint64_t>(i));
    total += static_cast<double>(build_typical_link_full(q, Scheme::CRS, r).interferers.size());
  }
  CHECK(total / 200.0 < 0.01);
}

TEST_CASE("full and thinned models agree on interferer counts") {
  SystemParams p;
  p.m_mean = 10.0;  // P0 about 0.5 so occupation thinning is visible
  const double p0 = occupation_probability(p.n_channels, p.m_mean);
  const double mean = disk_mean(p0 * p.lambda_p, p.sim_radius);
  const int draws = 10000;
  const auto full = count_stats(draws, [&](int i) {
    auto r = realization_stream(11, static_cast<std::uint64_t>(i));
    return static_cast<double>(build_typical_link_full(p, Scheme::RRS, r).interferers.size());
  });
  const auto thin = count_stats(draws, [&](int i) {
    auto r = realization_stream(12, static_cast<std::uint64_t>(i));
    return static_cast<double>(build_typical_link_thinned(p, p0, r).interferers.size());
  });
  CHECK(std::abs(full.mean - mean) < 3.0 * std::sqrt(full.var / draws));
  // Welch two-sample z at the 1% level
  const double z = (full.mean - thin.mean) / std::sqrt(full.var / draws + thin.var / draws);
  CHECK(std::abs(z) < 2.576);
}

TEST_CASE("full link geometry bounds") {
  SystemParams p;
  for (int i = 0; i < 100; ++i) {
    auto rng = realization_stream(13, static_cast<std::uint64_t>(i));
    for (const auto& it : build_typical_link_full(p, Scheme::RRS, rng).interferers) {
      REQUIRE((it.r_d > 0.0 && it.r_d <= p.r_cluster));
      REQUIRE((it.y > 0.0 && it.y <= p.sim_radius + p.r_cluster));
    }
  }
}

TEST_CASE("samplers are deterministic per seed and index") {
  SystemParams p;
  auto a = realization_stream(99, 5);
  auto b = realization_stream(99, 5);
  const auto la = build_typical_link_full(p, Scheme::RRS, a);
  const auto lb = build_typical_link_full(p, Scheme::RRS, b);
  REQUIRE(la.interferers.size() == lb.interferers.size());
  for (std::size_t i = 0; i < la.interferers.size(); ++i) {
    CHECK(la.interferers[i].y == lb.interferers[i].y);
    CHECK(la.interferers[i].r_d == lb.interferers[i].r_d);
  }
  CHECK(la.k_typical == lb.k_typical);
  auto c = realization_stream(99, 6);
  CHECK(c() != realization_stream(99, 5)());
}

TEST_CASE("parameter validation") {
  SystemParams p;
  CHECK_NOTHROW(p.validate());
  auto bad = p;
  bad.n_channels = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = p;
  bad.alpha = 1.5;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = p;
  bad.sim_radius = 30.0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = p;
  bad.rho = 2.0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = p;
  bad.m_mean = -1.0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
}
