#include "aggmd/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aggmd/errors.hpp"
#include "aggmd/table.hpp"

namespace aggmd {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError("config key '" + key + "': '" + text + "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("config key '" + key + "': '" + text + "' is not a nonnegative integer");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': '" + text + "' is out of range");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_reals(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(key, item));
  validate_grid(out, key);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_cell(v[i]);
  }
  return out;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::RRS ? "RRS" : "CRS"; }

std::string to_string(InterferenceModel m) { return m == InterferenceModel::Thinned ? "thinned" : "full"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "RRS" || s == "rrs") return Scheme::RRS;
  if (s == "CRS" || s == "crs") return Scheme::CRS;
  throw UsageError("unknown scheme '" + s + "' (expected RRS or CRS)");
}

InterferenceModel parse_interference_model(const std::string& s) {
  if (s == "thinned") return InterferenceModel::Thinned;
  if (s == "full") return InterferenceModel::Full;
  throw UsageError("unknown interference model '" + s + "' (expected thinned or full)");
}

void validate_grid(const std::vector<double>& grid, const std::string& name) {
  if (grid.empty()) throw UsageError("grid '" + name + "' is empty");
  if (grid.size() < 2) return;
  const bool up = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool ok = up ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
    if (!ok) throw UsageError("grid '" + name + "' is not strictly monotone");
  }
}

bool ExperimentConfig::has_scheme(Scheme s) const {
  return std::find(schemes.begin(), schemes.end(), s) != schemes.end();
}

void ExperimentConfig::validate() const {
  system.validate();
  if (schemes.empty()) throw UsageError("schemes must not be empty");
  if (n_realizations < 1) throw UsageError("n_realizations must be >= 1");
  if (workers < 1) throw UsageError("workers must be >= 1");
  if (precision_bits < 53) throw UsageError("precision_bits must be >= 53");
  if (!theta_db.empty()) validate_grid(theta_db, "theta_db");
  if (!x.empty()) {
    validate_grid(x, "x");
    for (double v : x) {
      if (v < 0.0 || v > 1.0) throw UsageError("x values must lie in [0,1]");
    }
  }
  if (!m_grid.empty()) {
    validate_grid(m_grid, "m_grid");
    for (double v : m_grid) {
      if (v < 0.0) throw UsageError("m_grid values must be nonnegative");
    }
  }
  if (!u_targets.empty()) {
    validate_grid(u_targets, "u_targets");
    for (double v : u_targets) {
      if (!(v > 0.0 && v < 1.0)) throw UsageError("u_targets must lie in (0,1)");
    }
  }
  if (!lambda_grid.empty()) {
    validate_grid(lambda_grid, "lambda_grid");
    for (double v : lambda_grid) {
      if (!(v > 0.0)) throw UsageError("lambda_grid values must be positive");
    }
  }
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  auto& s = cfg.system;
  if (key == "lambda_p") {
    s.lambda_p = parse_real(key, value);
  } else if (key == "n_channels") {
    s.n_channels = static_cast<int>(parse_unsigned(key, value));
  } else if (key == "m_mean") {
    s.m_mean = parse_real(key, value);
  } else if (key == "r_cluster") {
    s.r_cluster = parse_real(key, value);
  } else if (key == "alpha") {
    s.alpha = parse_real(key, value);
  } else if (key == "sim_radius") {
    s.sim_radius = parse_real(key, value);
  } else if (key == "rho") {
    s.rho = parse_real(key, value);
  } else if (key == "schemes") {
    cfg.schemes.clear();
    for (const auto& item : split_list(value)) {
      const auto sc = parse_scheme(item);
      if (cfg.has_scheme(sc)) throw UsageError("scheme '" + item + "' listed twice");
      cfg.schemes.push_back(sc);
    }
  } else if (key == "theta_db") {
    cfg.theta_db = parse_reals(key, value);
  } else if (key == "x") {
    cfg.x = parse_reals(key, value);
  } else if (key == "n_realizations") {
    cfg.n_realizations = parse_unsigned(key, value);
  } else if (key == "interference_model") {
    cfg.interference_model = parse_interference_model(value);
  } else if (key == "master_seed") {
    cfg.master_seed = parse_unsigned(key, value);
  } else if (key == "output_path") {
    cfg.output_path = value;
  } else if (key == "m_grid") {
    cfg.m_grid = parse_reals(key, value);
  } else if (key == "u_targets") {
    cfg.u_targets = parse_reals(key, value);
  } else if (key == "lambda_grid") {
    cfg.lambda_grid = parse_reals(key, value);
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(parse_unsigned(key, value));
  } else if (key == "precision_bits") {
    cfg.precision_bits = static_cast<int>(parse_unsigned(key, value));
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw UsageError("config key '" + key + "' given twice");
    apply_config_value(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// `workers` is left out: emitted files must not depend on it.
RunInfo describe(const ExperimentConfig& cfg) {
  RunInfo info;
  const auto& s = cfg.system;
  info["lambda_p"] = format_cell(s.lambda_p);
  info["n_channels"] = std::to_string(s.n_channels);
  info["m_mean"] = format_cell(s.m_mean);
  info["r_cluster"] = format_cell(s.r_cluster);
  info["alpha"] = format_cell(s.alpha);
  info["sim_radius"] = format_cell(s.sim_radius);
  info["rho"] = format_cell(s.rho);
  std::string schemes;
  for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
    if (i) schemes += ",";
    schemes += to_string(cfg.schemes[i]);
  }
  info["schemes"] = schemes;
  info["theta_db"] = join(cfg.theta_db);
  info["x"] = join(cfg.x);
  info["n_realizations"] = std::to_string(cfg.n_realizations);
  info["interference_model"] = to_string(cfg.interference_model);
  info["master_seed"] = std::to_string(cfg.master_seed);
  info["output_path"] = cfg.output_path;
  info["m_grid"] = join(cfg.m_grid);
  info["u_targets"] = join(cfg.u_targets);
  info["lambda_grid"] = join(cfg.lambda_grid);
  info["precision_bits"] = std::to_string(cfg.precision_bits);
  return info;
}

}  // namespace aggmd
