#include "aggmd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "aggmd/errors.hpp"
#include "aggmd/md_estimator.hpp"
#include "aggmd/rrs_analytic.hpp"
#include "aggmd/scheduling.hpp"

namespace aggmd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bracket and tolerance for threshold searches, in dB.
constexpr double kSearchLowDb = -60.0;
constexpr double kSearchHighDb = 40.0;
constexpr double kSearchTolDb = 0.01;

EstimatorOptions estimator_options(const ExperimentConfig& cfg, Scheme scheme) {
  EstimatorOptions o;
  o.scheme = scheme;
  o.interference_model = cfg.interference_model;
  o.n_realizations = cfg.n_realizations;
  o.master_seed = cfg.master_seed;
  o.workers = cfg.workers;
  o.crs.precision_bits = cfg.precision_bits;
  return o;
}

std::optional<RrsAnalyticParams> analytic_params(const SystemParams& s) {
  if (s.alpha != 4.0) return std::nullopt;
  return derive_params(s);
}

std::vector<double> thetas_linear(const std::vector<double>& db) {
  std::vector<double> out;
  out.reserve(db.size());
  for (double d : db) out.push_back(db_to_linear(d));
  return out;
}

std::vector<double> sorted_increasing(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Per-theta CCDF curves of one scheme, or nothing if the scheme is not requested.
struct SchemeRun {
  std::vector<MetaCurve> curves;
  std::vector<double> success_probability;
};

std::optional<SchemeRun> run_scheme(const ExperimentConfig& cfg, const SystemParams& system, Scheme scheme,
                                    const std::vector<double>& thetas, const std::vector<double>& x_increasing) {
  if (!cfg.has_scheme(scheme)) return std::nullopt;
  const auto samples = sample_conditional_success(system, thetas, estimator_options(cfg, scheme));
  SchemeRun run;
  const auto prov = scheme == Scheme::CRS ? Provenance::SemiAnalytic : Provenance::Empirical;
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    run.curves.push_back(meta_curve_from_samples(thetas[t], samples[t], x_increasing, prov));
    run.success_probability.push_back(empirical_success_probability(samples[t]));
  }
  return run;
}

Cell curve_value(const std::optional<SchemeRun>& run, std::size_t t, double x) {
  if (!run) return std::nullopt;
  for (const auto& pt : run->curves[t].grid) {
    if (pt.x == x) return pt.value;
  }
  return std::nullopt;
}

Cell curve_ci(const std::optional<SchemeRun>& run, std::size_t t, double x) {
  if (!run) return std::nullopt;
  const auto& c = run->curves[t];
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    if (c.grid[i].x == x) return (*c.ci_halfwidth)[i];
  }
  return std::nullopt;
}

Cell run_ps(const std::optional<SchemeRun>& run, std::size_t t) {
  if (!run) return std::nullopt;
  return run->success_probability[t];
}

Cell analytic_meta(const std::optional<RrsAnalyticParams>& p, double theta, double x) {
  if (!p) return std::nullopt;
  return rrs_meta({theta, x}, *p);
}

Cell analytic_ps(const std::optional<RrsAnalyticParams>& p, double theta) {
  if (!p) return std::nullopt;
  return rrs_success_probability(theta, *p);
}

Cell times(Cell a, double k) {
  if (!a) return std::nullopt;
  return *a * k;
}

std::string u_label(double u) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", u);
  return buf;
}

// Highest threshold (dB) at which the link still has P_s > x. +inf for an
// interference-free link, -inf if even the lowest bracket fails.
double crs_link_threshold_db(std::span<const double> ratios, int k, int n_channels, double x,
                             const CrsEvalSettings& settings) {
  if (ratios.empty()) return kInf;
  auto ok = [&](double db) {
    return crs_conditional_success(db_to_linear(db), k, n_channels, ratios, settings).value > x;
  };
  double lo = kSearchLowDb;
  double hi = kSearchHighDb;
  if (!ok(lo)) return -kInf;
  if (ok(hi)) return kInf;
  while (hi - lo > kSearchTolDb) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Bisection of the empirical CCDF over per-link thresholds: the largest
// theta_db with fraction{threshold >= theta_db} >= u.
std::optional<double> crs_rate_threshold_db(const std::vector<double>& link_db, double u) {
  const double n = static_cast<double>(link_db.size());
  auto fraction = [&](double db) {
    return static_cast<double>(std::count_if(link_db.begin(), link_db.end(), [&](double v) { return v >= db; })) / n;
  };
  double lo = kSearchLowDb;
  double hi = kSearchHighDb;
  if (fraction(lo) < u || fraction(hi) >= u) return std::nullopt;
  while (hi - lo > kSearchTolDb) {
    const double mid = 0.5 * (lo + hi);
    (fraction(mid) >= u ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double rate_bpcu(double theta) { return std::log2(1.0 + theta); }

std::vector<double> default_md_x_grid() {
  std::vector<double> g(100);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.999 * static_cast<double>(i) / 99.0;
  return g;
}

std::vector<double> default_theta_db_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 12; ++i) g.push_back(-20.0 + 2.5 * i);
  return g;
}

std::vector<double> default_m_grid() {
  return {0, 5, 10, 15, 20, 25, 30, 40, 50, 60, 80, 100, 120};
}

std::vector<double> default_lambda_grid() {
  return {1e-7, 2e-7, 5e-7, 1e-6, 2e-6, 3e-6, 5e-6, 1e-5, 2e-5, 3e-5};
}

std::vector<std::string> p0_columns() { return {"n_channels", "m_mean", "p0"}; }

std::vector<std::string> rrs_md_columns() {
  return {"theta_db", "x", "rrs_analytic", "rrs_empirical", "rrs_empirical_ci"};
}

std::vector<std::string> crs_md_columns() {
  return {"theta_db", "x", "crs_semianalytic", "crs_semianalytic_ci"};
}

std::vector<std::string> md_vs_x_columns() {
  return {"x",
          "rrs_analytic",
          "rrs_empirical",
          "rrs_empirical_ci",
          "crs_semianalytic",
          "crs_semianalytic_ci",
          "ps_rrs_analytic",
          "ps_rrs_empirical",
          "ps_crs_empirical"};
}

std::vector<std::string> md_vs_theta_columns() {
  return {"theta_db",
          "theta",
          "rate_bpcu",
          "x",
          "rrs_analytic",
          "rrs_empirical",
          "rrs_empirical_ci",
          "crs_semianalytic",
          "crs_semianalytic_ci",
          "ps_rrs_analytic",
          "ps_rrs_empirical",
          "ps_crs_empirical"};
}

std::vector<std::string> rate_vs_m_columns(const std::vector<double>& u_targets) {
  std::vector<std::string> cols{"m_mean", "p0"};
  for (double u : u_targets) {
    cols.push_back("rate_rrs_u" + u_label(u));
    cols.push_back("rate_crs_u" + u_label(u));
  }
  return cols;
}

std::vector<std::string> md_vs_lambda_columns() {
  return {"lambda_p",
          "x",
          "p0",
          "rrs_analytic",
          "rrs_empirical",
          "rrs_empirical_ci",
          "crs_semianalytic",
          "crs_semianalytic_ci",
          "served_rrs_analytic",
          "served_rrs_empirical",
          "served_crs_semianalytic"};
}

Table run_p0(int n_channels, double m_mean) {
  Table t;
  t.columns = p0_columns();
  t.add_row({static_cast<double>(n_channels), m_mean, occupation_probability(n_channels, m_mean)});
  return t;
}

Table run_rrs_md(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto theta_db = cfg.theta_db.empty() ? std::vector<double>{0.0} : cfg.theta_db;
  const auto xs = cfg.x.empty() ? default_md_x_grid() : cfg.x;
  const auto thetas = thetas_linear(theta_db);
  const auto analytic = analytic_params(cfg.system);
  ExperimentConfig only = cfg;
  only.schemes = {Scheme::RRS};
  const auto rrs = run_scheme(only, cfg.system, Scheme::RRS, thetas, sorted_increasing(xs));

  Table t;
  t.columns = rrs_md_columns();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (double x : xs) {
      t.add_row({theta_db[i], x, analytic_meta(analytic, thetas[i], x), curve_value(rrs, i, x), curve_ci(rrs, i, x)});
    }
  }
  return t;
}

Table run_crs_md(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto theta_db = cfg.theta_db.empty() ? std::vector<double>{0.0} : cfg.theta_db;
  const auto xs = cfg.x.empty() ? default_md_x_grid() : cfg.x;
  const auto thetas = thetas_linear(theta_db);
  ExperimentConfig only = cfg;
  only.schemes = {Scheme::CRS};
  const auto crs = run_scheme(only, cfg.system, Scheme::CRS, thetas, sorted_increasing(xs));

  Table t;
  t.columns = crs_md_columns();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (double x : xs) t.add_row({theta_db[i], x, curve_value(crs, i, x), curve_ci(crs, i, x)});
  }
  return t;
}

Table run_md_vs_x(const ExperimentConfig& cfg) {
  cfg.validate();
  const double theta = db_to_linear(cfg.theta_db.empty() ? 0.0 : cfg.theta_db.front());
  const auto xs = cfg.x.empty() ? default_md_x_grid() : cfg.x;
  validate_x_grid(xs);
  const std::vector<double> thetas{theta};
  const auto analytic = analytic_params(cfg.system);
  const auto rrs = run_scheme(cfg, cfg.system, Scheme::RRS, thetas, xs);
  const auto crs = run_scheme(cfg, cfg.system, Scheme::CRS, thetas, xs);

  Table t;
  t.columns = md_vs_x_columns();
  for (double x : xs) {
    t.add_row({x, analytic_meta(analytic, theta, x), curve_value(rrs, 0, x), curve_ci(rrs, 0, x),
               curve_value(crs, 0, x), curve_ci(crs, 0, x), analytic_ps(analytic, theta), run_ps(rrs, 0),
               run_ps(crs, 0)});
  }
  return t;
}

Table run_md_vs_theta(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto theta_db = cfg.theta_db.empty() ? default_theta_db_grid() : cfg.theta_db;
  const auto xs = cfg.x.empty() ? std::vector<double>{0.9, 0.99, 0.999} : cfg.x;
  const auto thetas = thetas_linear(theta_db);
  const auto analytic = analytic_params(cfg.system);
  const auto x_sorted = sorted_increasing(xs);
  const auto rrs = run_scheme(cfg, cfg.system, Scheme::RRS, thetas, x_sorted);
  const auto crs = run_scheme(cfg, cfg.system, Scheme::CRS, thetas, x_sorted);

  Table t;
  t.columns = md_vs_theta_columns();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (double x : xs) {
      t.add_row({theta_db[i], thetas[i], rate_bpcu(thetas[i]), x, analytic_meta(analytic, thetas[i], x),
                 curve_value(rrs, i, x), curve_ci(rrs, i, x), curve_value(crs, i, x), curve_ci(crs, i, x),
                 analytic_ps(analytic, thetas[i]), run_ps(rrs, i), run_ps(crs, i)});
    }
  }
  return t;
}

Table run_rate_vs_m(const ExperimentConfig& cfg, const std::vector<double>& u_targets, double x) {
  cfg.validate();
  validate_grid(u_targets, "u_targets");
  if (!(x > 0.0 && x < 1.0)) throw UsageError("rate-vs-m: x must lie in (0,1)");
  const auto m_grid = cfg.m_grid.empty() ? default_m_grid() : cfg.m_grid;

  Table t;
  t.columns = rate_vs_m_columns(u_targets);
  for (double m : m_grid) {
    SystemParams sys = cfg.system;
    sys.m_mean = m;
    const double p0 = occupation_probability(sys.n_channels, m);
    const auto analytic = analytic_params(sys);

    // Per-link CRS thresholds, shared by all u targets.
    std::optional<std::vector<double>> link_db;
    if (cfg.has_scheme(Scheme::CRS) && m > 0.0) {
      const auto opts = estimator_options(cfg, Scheme::CRS);
      std::vector<double> db(cfg.n_realizations);
      parallel_for(cfg.n_realizations, cfg.workers, [&](std::size_t r) {
        const auto link = realize_link(sys, opts, p0, r);
        const auto ratios = interference_ratios(link, sys.alpha);
        db[r] = crs_link_threshold_db(ratios, link.k_typical, sys.n_channels, x, opts.crs);
      });
      link_db = std::move(db);
    }

    std::vector<Cell> row{m, p0};
    for (double u : u_targets) {
      Cell rrs;
      if (cfg.has_scheme(Scheme::RRS)) {
        if (m == 0.0) {
          rrs = kInf;
        } else if (analytic) {
          rrs = rrs_max_threshold(x, u, *analytic).rate_bpcu;
        }
      }
      Cell crs;
      if (cfg.has_scheme(Scheme::CRS)) {
        if (m == 0.0) {
          crs = kInf;
        } else if (const auto db = crs_rate_threshold_db(*link_db, u)) {
          crs = rate_bpcu(db_to_linear(*db));
        }
      }
      row.push_back(rrs);
      row.push_back(crs);
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table run_md_vs_lambda(const ExperimentConfig& cfg) {
  cfg.validate();
  const double theta = db_to_linear(cfg.theta_db.empty() ? 0.0 : cfg.theta_db.front());
  const auto lambdas = cfg.lambda_grid.empty() ? default_lambda_grid() : cfg.lambda_grid;
  const auto xs = cfg.x.empty() ? std::vector<double>{0.9, 0.999} : cfg.x;
  const auto x_sorted = sorted_increasing(xs);
  const std::vector<double> thetas{theta};

  Table t;
  t.columns = md_vs_lambda_columns();
  for (double lambda : lambdas) {
    SystemParams sys = cfg.system;
    sys.lambda_p = lambda;
    const double p0 = occupation_probability(sys.n_channels, sys.m_mean);
    const auto analytic = analytic_params(sys);
    const auto rrs = run_scheme(cfg, sys, Scheme::RRS, thetas, x_sorted);
    const auto crs = run_scheme(cfg, sys, Scheme::CRS, thetas, x_sorted);
    const double served = lambda * p0;
    for (double x : xs) {
      const Cell a = analytic_meta(analytic, theta, x);
      const Cell re = curve_value(rrs, 0, x);
      const Cell ce = curve_value(crs, 0, x);
      t.add_row({lambda, x, p0, a, re, curve_ci(rrs, 0, x), ce, curve_ci(crs, 0, x), times(a, served),
                 times(re, served), times(ce, served)});
    }
  }
  return t;
}

Table run_figure(int id, const ExperimentConfig& cfg) {
  switch (id) {
    case 2:
      return run_md_vs_x(cfg);
    case 3:
      return run_md_vs_theta(cfg);
    case 4: {
      const auto u = cfg.u_targets.empty() ? std::vector<double>{0.99, 0.95} : cfg.u_targets;
      return run_rate_vs_m(cfg, u, cfg.x.empty() ? 0.99 : cfg.x.front());
    }
    case 5:
      return run_md_vs_lambda(cfg);
    default:
      throw UsageError("figure id must be one of 2, 3, 4, 5");
  }
}

}  // namespace aggmd
