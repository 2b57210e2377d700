#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "ncber/experiments.hpp"
#include "ncber/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void print_diagnostics(const std::vector<ncber::experiments::Diagnostic>& diags) {
  for (const auto& d : diags) {
    const char* sev =
        d.severity == ncber::experiments::Diagnostic::Severity::Error ? "error" : "warning";
    if (d.line > 0)
      std::cerr << "line " << d.line << ": " << sev << ": " << d.message << "\n";
    else
      std::cerr << sev << ": " << d.message << "\n";
  }
}

bool has_errors(const std::vector<ncber::experiments::Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == ncber::experiments::Diagnostic::Severity::Error) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BER analysis toolkit for relayed and network-coded links"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::string out_dir;
  int threads = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment and write its CSV");
  run_cmd->add_option("--config", config_path, "config file")->required();
  run_cmd->add_option("--seed", seed_override, "override the config seed");
  run_cmd->add_option("--out", out_dir, "directory for the output CSV");
  run_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a config file");
  validate_cmd->add_option("--config", config_path, "config file")->required();

  app.add_subcommand("list-experiments", "show the available experiments");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list-experiments")) {
    std::cout << ncber::experiments::list_experiments();
    return kExitOk;
  }

  std::vector<ncber::experiments::Diagnostic> diags;
  ncber::experiments::ExperimentConfig cfg =
      ncber::experiments::load_config_file(config_path, diags);
  if (!has_errors(diags)) {
    const auto more = ncber::experiments::validate(cfg);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  print_diagnostics(diags);
  if (has_errors(diags)) return kExitConfig;

  if (app.got_subcommand("validate")) {
    std::cout << "config ok\n";
    return kExitOk;
  }

  if (seed_override) cfg.seed = *seed_override;
  if (!out_dir.empty())
    cfg.output_path = (std::filesystem::path(out_dir) / cfg.output_path).string();
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw ? static_cast<int>(hw) : 1;
  }

  try {
    const ncber::experiments::RunOutput out = ncber::experiments::run(cfg, threads);
    std::cout << out.summary << "\n";
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}
