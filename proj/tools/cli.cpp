#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "acceptance/criteria.hpp"
#include "aggmd/config.hpp"
#include "aggmd/errors.hpp"
#include "aggmd/experiments.hpp"
#include "aggmd/table.hpp"

namespace aggmd {

namespace {

struct GlobalFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
  std::optional<unsigned> workers;
  std::optional<std::size_t> realizations;
  std::string interference_model;
};

struct Failure {
  int code;
  const char* kind;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '"', '\'');
  return s;
}

int report(std::ostream& err, Failure f, const std::string& message) {
  err << "error: code=" << f.code << " kind=" << f.kind << " message=\"" << one_line(message) << "\"\n";
  return f.code;
}

void add_global_flags(CLI::App& app, GlobalFlags& g) {
  app.add_option("--config", g.config_path, "key = value configuration file");
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out_path, "output file (default: stdout)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--realizations", g.realizations, "Monte Carlo realizations")->check(CLI::PositiveNumber);
  app.add_option("--interference-model", g.interference_model, "interferer field")
      ->check(CLI::IsMember({"thinned", "full"}));
}

ExperimentConfig resolve_config(const GlobalFlags& g) {
  ExperimentConfig cfg = g.config_path.empty() ? ExperimentConfig{} : load_config(g.config_path);
  if (g.seed) cfg.master_seed = *g.seed;
  if (g.workers) cfg.workers = *g.workers;
  if (g.realizations) cfg.n_realizations = *g.realizations;
  if (!g.interference_model.empty()) cfg.interference_model = parse_interference_model(g.interference_model);
  if (!g.out_path.empty()) cfg.output_path = g.out_path;
  cfg.validate();
  return cfg;
}

std::vector<double> parse_list(const std::string& name, const std::string& text) {
  ExperimentConfig scratch;
  apply_config_value(scratch, name, text);
  return name == "theta_db" ? scratch.theta_db : name == "x" ? scratch.x : name == "m_grid" ? scratch.m_grid
                                                                                              : scratch.u_targets;
}

void emit(const Table& t, const ExperimentConfig& cfg, const GlobalFlags& g, std::ostream& out) {
  const auto format = g.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  emit_table(t, format, cfg.output_path, out, describe(cfg), cfg.master_seed);
}

}  // namespace

int cli_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meta distribution of the SIR for clustered uplink MTC with RRS/CRS scheduling", "aggmd"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  add_global_flags(app, g);

  int n_channels = 20;
  double m_mean = 60.0;
  auto* p0 = app.add_subcommand("p0", "average channel occupation probability");
  p0->add_option("--n", n_channels, "channels per aggregator")->check(CLI::PositiveNumber);
  p0->add_option("--m", m_mean, "mean MTDs per cluster")->check(CLI::NonNegativeNumber);

  std::string theta_db_text;
  std::string x_text;
  auto* rrs = app.add_subcommand("rrs-md", "RRS meta distribution: closed form and Monte Carlo");
  auto* crs = app.add_subcommand("crs-md", "CRS semi-analytic meta distribution");
  for (auto* sub : {rrs, crs}) {
    sub->add_option("--theta-db", theta_db_text, "comma-separated thresholds in dB");
    sub->add_option("--x", x_text, "comma-separated reliabilities");
  }

  int figure_id = 0;
  auto* figure = app.add_subcommand("figure", "figure data tables");
  figure->add_option("--id", figure_id, "figure id")->required()->check(CLI::IsMember({2, 3, 4, 5}));

  std::string u_text;
  std::string m_grid_text;
  std::optional<double> rate_x;
  auto* rate = app.add_subcommand("rate-vs-m", "largest rate against mean cluster size");
  rate->add_option("--u", u_text, "comma-separated link fractions");
  rate->add_option("--x", rate_x, "reliability");
  rate->add_option("--m-grid", m_grid_text, "comma-separated mean cluster sizes");

  auto* validate = app.add_subcommand("validate", "run the acceptance suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return report(err, {1, "usage"}, e.what());
  }

  try {
    auto cfg = resolve_config(g);
    if (*p0) {
      emit(run_p0(n_channels, m_mean), cfg, g, out);
    } else if (*rrs || *crs) {
      if (!theta_db_text.empty()) cfg.theta_db = parse_list("theta_db", theta_db_text);
      if (!x_text.empty()) cfg.x = parse_list("x", x_text);
      emit(*rrs ? run_rrs_md(cfg) : run_crs_md(cfg), cfg, g, out);
    } else if (*figure) {
      emit(run_figure(figure_id, cfg), cfg, g, out);
    } else if (*rate) {
      if (!u_text.empty()) cfg.u_targets = parse_list("u_targets", u_text);
      if (!m_grid_text.empty()) cfg.m_grid = parse_list("m_grid", m_grid_text);
      const auto u = cfg.u_targets.empty() ? std::vector<double>{0.99, 0.95} : cfg.u_targets;
      const double x = rate_x ? *rate_x : cfg.x.empty() ? 0.99 : cfg.x.front();
      emit(run_rate_vs_m(cfg, u, x), cfg, g, out);
    } else if (*validate) {
      acceptance::AcceptanceOptions opts;
      opts.seed = cfg.master_seed;
      opts.workers = cfg.workers;
      if (g.realizations) opts.realizations = *g.realizations;
      const auto results = acceptance::run_all(opts, &out);
      if (!acceptance::all_hard_passed(results)) {
        return report(err, {2, "numerical"}, "acceptance criteria failed");
      }
    }
  } catch (const UsageError& e) {
    return report(err, {1, "usage"}, e.what());
  } catch (const IoError& e) {
    return report(err, {3, "io"}, e.what());
  } catch (const NumericalError& e) {
    return report(err, {2, "numerical"}, e.what());
  } catch (const std::exception& e) {
    return report(err, {2, "numerical"}, e.what());
  }
  return 0;
}

}  // namespace aggmd
