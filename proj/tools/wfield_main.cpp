// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: optimizes purified ensembles of the periodic
// spinless-fermion chain and tabulates spectra and gaps against dense
// diagonalization. Exit codes: 0 success, 1 failed run (validate failure or
// unconverged rows under --strict), 2 configuration or usage error.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "wfield/experiment.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool strict = false;

  CLI::Option* config_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
  o.config_opt = cmd->add_option("--config", o.config_path, "Experiment config file (INI)")
                     ->check(CLI::ExistingFile);
  o.out_opt = cmd->add_option("--out", o.out_dir, "Output directory for CSV/JSON");
  o.seed_opt = cmd->add_option("--seed", o.seed, "Random seed override");
  o.jobs_opt = cmd->add_option("--jobs", o.jobs, "Worker threads over the U grid");
  cmd->add_flag("--strict", o.strict, "Nonzero exit when any row is unconverged");
}

wfield::ExperimentConfig resolve(const CliOverrides& o) {
  wfield::ExperimentConfig config;
  if (o.config_opt->count()) config = wfield::load_config(o.config_path);
  if (o.out_opt->count()) config.out_dir = o.out_dir;
  if (o.seed_opt->count()) config.seed = o.seed;
  if (o.jobs_opt->count()) config.jobs = o.jobs;
  if (o.strict) config.strict = true;
  if (config.jobs < 1) throw wfield::ConfigError("config: run.jobs must be positive");
  return config;
}

void report(const wfield::RunResult& result) {
  if (!result.csv_path.empty()) std::printf("wrote %s\n", result.csv_path.c_str());
  if (!result.json_path.empty()) std::printf("wrote %s\n", result.json_path.c_str());
  std::printf("%zu rows, %s\n", result.rows.size(), result.ok ? "ok" : "flagged");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Purified-ensemble spectroscopy of the spinless-fermion chain"};
  app.require_subcommand(1);

  CliOverrides spectrum_opts, gaps_opts, validate_opts;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Optimize and tabulate eigenenergies");
  CLI::App* gaps = app.add_subcommand("gaps", "Neutral and fundamental gaps");
  CLI::App* validate = app.add_subcommand("validate", "Run the invariant suite");
  add_common_flags(spectrum, spectrum_opts);
  add_common_flags(gaps, gaps_opts);
  add_common_flags(validate, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) {
      const auto config = resolve(spectrum_opts);
      const auto result = wfield::run_spectrum(config);
      report(result);
      return config.strict && !result.ok ? 1 : 0;
    }
    if (gaps->parsed()) {
      const auto config = resolve(gaps_opts);
      const auto result = wfield::run_gaps(config);
      report(result);
      return config.strict && !result.ok ? 1 : 0;
    }
    const auto config = resolve(validate_opts);
    const auto result = wfield::run_validate(config);
    report(result);
    return result.ok ? 0 : 1;
  } catch (const wfield::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
