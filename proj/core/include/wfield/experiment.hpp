// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_EXPERIMENT_HPP
#define WFIELD_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfield/model.hpp"
#include "wfield/optim.hpp"
#include "wfield/oracle.hpp"
#include "wfield/spectroscopy.hpp"
#include "wfield/ucc.hpp"
#include "wfield/weights.hpp"
#include "wfield/wfield_state.hpp"

namespace wfield {

// ---------------------------------------------------------------------------
// Configuration: one INI-style file with [section] headers and key = value
// lines. Keys, defaults and units are documented in README.md. Command-line
// flags override the [run] values.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OptimizerSettings {
  double tolerance = 1e-5;
  long max_iterations = 20000;
  double initial_step = 0.1;
  int restarts = 2;
  int greedy_rounds = 2;          // pi/2 axis seeding passes before the simplex
  // Corner evaluations for gap extraction. At fixed theta the sector energy
  // is exactly multilinear in the mu ratios, so the finite-difference
  // reconstruction is noise-free; that is the default. Re-optimizing theta at
  // every corner matches the idealized definition of E(w) but divides the
  // optimizer's own convergence scatter by products of small delta_mu, which
  // needs corner values consistent to ~1e-8 before it stops dominating.
  bool corner_reoptimize = false;
  double corner_tolerance_scale = 1e-3;
  long corner_max_iterations = 6000;
  double corner_initial_step = 0.02;  // small warm-start simplex
};

struct ExperimentConfig {
  // [model]
  int sites = 5;
  std::vector<double> u_values = {0.0, 1.0, 2.0, 4.0};
  // [weights] empty -> w_m = 1/2 - m/(2L)
  std::vector<double> weight_values;
  // [ansatz]
  int trotter_steps = 4;
  // [optimizer]
  OptimizerSettings optimizer;
  // [run]
  std::string experiment_id = "wfield";
  std::vector<int> sectors = {2, 3};
  double delta = 0.005;  // weight shift for finite-difference extraction
  std::uint64_t seed = 1;
  int jobs = 1;
  bool strict = false;
  bool timing = false;  // real wallclock_ms (breaks byte-identical output)
  std::string out_dir = ".";
};

ExperimentConfig load_config(const std::string& path);
WeightVector config_weights(const ExperimentConfig& config);
// Fully resolved config as pretty JSON (embedded into every output file).
std::string config_json(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// One (L, U, weights, trotter) pipeline: Hamiltonian in the energy-sorted
// momentum basis over the doubled register, compiled ansatz, oracle spectra.

class EnsembleSolver {
 public:
  EnsembleSolver(int sites, double u, const WeightVector& w, int trotter_steps);

  int sites() const { return sites_; }
  double u() const { return u_; }
  const WeightVector& weights() const { return w_; }
  const AnsatzShape& shape() const { return shape_; }
  const CompiledOperator& hamiltonian() const { return h_doubled_; }
  const CompiledOperator& hamiltonian_physical() const { return h_plain_; }

  // Dense per-sector reference spectra (ascending), index = particle number.
  const std::vector<std::vector<double>>& spectra() const { return spectra_; }
  double oracle_minimum() const;

  // U(theta)|0(w)> over the doubled register, at arbitrary weights.
  StateVector ensemble_state(const std::vector<double>& theta) const;
  StateVector ensemble_state(const std::vector<double>& theta,
                             const WeightVector& wv) const;

  double energy(const std::vector<double>& theta) const;
  double energy(const std::vector<double>& theta, const WeightVector& wv) const;

  // pi/2 axis seeding followed by Nelder-Mead restarts.
  OptimizationResult optimize(const OptimizerSettings& settings, std::uint64_t seed,
                              std::vector<double> start = {}) const;

  // E_N at fixed parameters: prepare at wv, rotate, project, divide by D(wv).
  double sector_energy_fixed(const std::vector<double>& theta, const WeightVector& wv,
                             int sector) const;

  // E_N with theta re-optimized for wv, warm-started from `warm` at a
  // tightened tolerance. Optima are cached per weight vector.
  double sector_energy_reoptimized(const WeightVector& wv, int sector,
                                   const OptimizerSettings& settings, std::uint64_t seed,
                                   const std::vector<double>& warm);

  // Per-state readout: eigenstate attached to each tilde pattern of the
  // sector, by descending pattern weight, with its reference eigenvalue.
  struct StateReadout {
    fock_index pattern = 0;
    int rank = 0;       // 1 = heaviest pattern
    double energy = 0.0;
    double oracle = 0.0;
    double weight = 0.0;  // captured squared norm
  };
  std::vector<StateReadout> projection_energies(const std::vector<double>& theta,
                                                int sector) const;

 private:
  int sites_;
  double u_;
  WeightVector w_;
  FockSpace space_;
  AnsatzShape shape_;
  CompiledAnsatz ansatz_;
  CompiledOperator h_doubled_;
  CompiledOperator h_plain_;
  StateVector prepared_;  // |0(w)> at the base weights
  std::vector<std::vector<double>> spectra_;
  std::map<std::string, std::vector<double>> theta_cache_;
};

// ---------------------------------------------------------------------------
// Experiment runners. Each writes <out>/<id>_<command>.csv (fixed columns
// experiment_id,L,N,U,pattern,method,energy,oracle,abs_error,converged,
// iterations,wallclock_ms) plus a JSON file with the resolved config, and
// returns the rows it wrote.

struct ResultRow {
  std::string experiment_id;
  int sites = 0;
  int sector = 0;
  double u = 0.0;
  std::string pattern;
  std::string method;
  double energy = 0.0;
  double oracle = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  long iterations = 0;
  long wallclock_ms = 0;
};

std::string csv_header();
std::string csv_line(const ResultRow& row);

struct RunResult {
  std::vector<ResultRow> rows;
  bool ok = true;  // spectrum/gaps: every row converged; validate: all checks passed
  std::string csv_path;
  std::string json_path;
};

RunResult run_spectrum(const ExperimentConfig& config);
RunResult run_gaps(const ExperimentConfig& config);
RunResult run_validate(const ExperimentConfig& config);

}  // namespace wfield

#endif  // WFIELD_EXPERIMENT_HPP
