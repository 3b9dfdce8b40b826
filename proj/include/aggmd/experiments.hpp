#pragma once

// Figure reproduction pipelines. Every pipeline returns a Table with a frozen
// column schema (see the *_columns functions); columns of a scheme that is
// not requested, or of a closed form that does not apply, are left missing.

#include <string>
#include <vector>

#include "aggmd/config.hpp"
#include "aggmd/table.hpp"

namespace aggmd {

double db_to_linear(double db);
double linear_to_db(double linear);
double rate_bpcu(double theta);

std::vector<double> default_md_x_grid();      ///< 0 .. 0.999, 100 points
std::vector<double> default_theta_db_grid();  ///< -20 .. 10 dB in 2.5 dB steps
std::vector<double> default_m_grid();
std::vector<double> default_lambda_grid();

std::vector<std::string> p0_columns();
std::vector<std::string> rrs_md_columns();
std::vector<std::string> crs_md_columns();
std::vector<std::string> md_vs_x_columns();
std::vector<std::string> md_vs_theta_columns();
std::vector<std::string> rate_vs_m_columns(const std::vector<double>& u_targets);
std::vector<std::string> md_vs_lambda_columns();

Table run_p0(int n_channels, double m_mean);

/// RRS meta distribution on theta_db x x: closed form and Monte Carlo.
Table run_rrs_md(const ExperimentConfig& cfg);

/// CRS semi-analytic meta distribution on theta_db x x.
Table run_crs_md(const ExperimentConfig& cfg);

/// Meta distribution against reliability at one threshold, with the
/// standard success probabilities alongside.
Table run_md_vs_x(const ExperimentConfig& cfg);

/// Meta distribution against the threshold for a few reliabilities.
Table run_md_vs_theta(const ExperimentConfig& cfg);

/// Largest rate keeping a fraction u of links at reliability x, per m.
/// RRS uses the closed form; CRS bisects the semi-analytic curve in dB to
/// 0.01 dB. A CRS row whose bracket fails is emitted as missing.
Table run_rate_vs_m(const ExperimentConfig& cfg, const std::vector<double>& u_targets, double x);

/// Meta distribution and served MTD density lambda_p P0 F against lambda_p.
Table run_md_vs_lambda(const ExperimentConfig& cfg);

/// Dispatches figure ids 2..5 to the pipelines above.
Table run_figure(int id, const ExperimentConfig& cfg);

}  // namespace aggmd
