#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncber/netcode.hpp"

namespace ncber::experiments {

enum class ExperimentKind { Fig2, Fig4, Fig6, Fig7, Custom };

struct Stopping {
  std::uint64_t min_errors = 200;
  std::uint64_t max_trials = 100'000'000;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Custom;
  std::vector<double> snr_db_grid;        // dB at the boundary, linear inside
  std::vector<std::string> methods;       // empty selects the experiment defaults
  Stopping stopping;
  std::uint64_t seed = 1;
  std::string output_path = "results.csv";
  std::optional<netcode::NetworkCode> network_code;
  double sigma2_sr = 1.0, sigma2_rd = 1.0, sigma2_sd = 1.0;
  double internode_variance = 1.0, slot_variance = 1.0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  int line = 0;  // 0 when not tied to a config line
  std::string message;
};

/// Flat key = value text with '#' comments, one bracketed matrix block for
/// G (rows split by ';') and a bracketed list for v. Parse problems are
/// reported per line; the returned config is usable when no error
/// diagnostics were appended.
ExperimentConfig parse_config(const std::string& text, std::vector<Diagnostic>& diags);
ExperimentConfig load_config_file(const std::string& path, std::vector<Diagnostic>& diags);

/// Structural checks on a parsed config (grid ordering, method names,
/// network-code invariants, variance/analysis mismatch warnings).
std::vector<Diagnostic> validate(const ExperimentConfig& cfg);

struct ResultRow {
  std::string experiment;
  std::string method;
  std::string source;  // "-" when not applicable
  double snr_db = 0.0;
  double value = 0.0;
  std::optional<std::uint64_t> errors;  // Monte Carlo rows only
  std::optional<std::uint64_t> trials;
  std::optional<double> half_width_95;
  bool budget_exhausted = false;
};

struct RunOutput {
  std::vector<ResultRow> rows;
  std::string csv_path;
  std::string summary;
};

/// Executes every requested method over the SNR grid and writes the CSV.
/// Output is byte-identical for a fixed (config, seed) regardless of the
/// thread count. Throws std::invalid_argument on config errors.
RunOutput run(const ExperimentConfig& cfg, int threads);

std::string render_csv(const std::vector<ResultRow>& rows);
std::string list_experiments();

/// Default method set and SNR grid per experiment.
std::vector<std::string> default_methods(ExperimentKind kind);
std::vector<double> default_grid(ExperimentKind kind);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace ncber::experiments
