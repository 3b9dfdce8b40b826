#pragma once

// Experiment configuration and its flat key-value file format.
//
//   # comment
//   lambda_p = 3e-6
//   theta_db = -10, -5, 0
//   schemes = RRS, CRS
//
// Keys are the ExperimentConfig field names (SystemParams fields appear
// unprefixed). Unknown keys, repeated keys and malformed values are errors.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aggmd/network_model.hpp"
#include "aggmd/table.hpp"

namespace aggmd {

struct ExperimentConfig {
  SystemParams system;
  std::vector<Scheme> schemes{Scheme::RRS, Scheme::CRS};
  std::vector<double> theta_db;     ///< empty: pipeline default
  std::vector<double> x;            ///< empty: pipeline default
  std::size_t n_realizations = 100000;
  InterferenceModel interference_model = InterferenceModel::Thinned;
  std::uint64_t master_seed = 1;
  std::string output_path;
  std::vector<double> m_grid;       ///< rate-vs-m sweep; empty: default
  std::vector<double> u_targets;    ///< rate-vs-m fractions; empty: {0.99, 0.95}
  std::vector<double> lambda_grid;  ///< density sweep; empty: default
  unsigned workers = 1;
  int precision_bits = 53;

  bool has_scheme(Scheme s) const;
  void validate() const;
};

ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a config file; IoError when unreadable.
ExperimentConfig load_config(const std::string& path);

/// Applies one `key = value` assignment. Throws UsageError on unknown keys.
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Every key with its current value, in config-file syntax.
RunInfo describe(const ExperimentConfig& cfg);

std::string to_string(Scheme s);
std::string to_string(InterferenceModel m);
Scheme parse_scheme(const std::string& s);
InterferenceModel parse_interference_model(const std::string& s);

/// Nonempty and strictly increasing or strictly decreasing.
void validate_grid(const std::vector<double>& grid, const std::string& name);

}  // namespace aggmd
