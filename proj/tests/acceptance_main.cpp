// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checklist for the ensemble pipeline. Every criterion
// prints one [PASS]/[FAIL] line with a measured detail; the process exits
// nonzero if any criterion failed. The expensive optimizations (five sites,
// four couplings, four factorization steps) are shared across criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/expm.hpp"
#include "wfield/experiment.hpp"

using namespace wfield;

namespace {

struct Checklist {
  int failures = 0;

  void report(int id, const char* title, bool passed, const std::string& detail) {
    std::printf("[%s] %2d. %-38s %s\n", passed ? "PASS" : "FAIL", id, title,
                detail.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    worst = std::max(worst, std::abs(a.amp[i] - b.amp[i]));
  return worst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- 1. two-particle block constants ----------------------------------------

void criterion_block_constants(Checklist& list) {
  const double r = block_coupling_r();
  const double d = block_occupation_d();
  const double r_err = std::abs(r - 0.4472);
  const double d_err = std::abs(d - 0.2763);
  char buf[220];
  std::snprintf(buf, sizeof buf, "R = %.10f (|dR| = %.2e), D = %.10f (|dD| = %.2e)",
                r, r_err, d, d_err);
  std::string detail = buf;
  if (d_err > 5e-5)
    detail += "; D rounds to 0.2764, so the quoted 0.2763 is a truncation and the"
              " 5e-05 comparison cannot pass";
  list.report(1, "block constants R, D", r_err <= 5e-5 && d_err <= 5e-5, detail);
}

// --- 2. closed-form two-particle spectrum ------------------------------------

void criterion_closed_form(Checklist& list) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int u = 0; u <= 8; ++u) {
    const auto closed = two_particle_spectrum_l5(static_cast<double>(u));
    const auto dense =
        oracle::sector_spectrum(hubbard_site_terms({5, static_cast<double>(u)}), 5, 2);
    for (std::size_t i = 0; i < closed.size(); ++i)
      worst = std::max(worst, std::abs(closed[i] - dense[i]));
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "max |closed - dense| = %.2e over U = 0..8, %.2f s",
                worst, secs);
  list.report(2, "closed form vs dense, L=5 N=2", worst <= 1e-10 && secs < 1.0, buf);
}

// --- 3. corner reconstruction of dense sector energies ------------------------

void criterion_reconstruction(Checklist& list) {
  const auto t0 = std::chrono::steady_clock::now();
  const WeightVector w = default_weights(5);
  double worst = 0.0;
  for (const double u : {0.0, 1.0, 2.0, 4.0}) {
    const auto spectra = oracle::all_sector_spectra(hubbard_bloch_terms({5, u}), 5);
    for (const int sector : {2, 3}) {
      const OrderingMap order = sector_ordering(w, sector);
      const SectorEvaluator ranked = [&](const WeightVector& wv) {
        return oracle::sector_energy_ranked(wv, order, spectra[sector]);
      };
      for (const fock_index pattern : order.by_rank) {
        const double e = extract_eigenenergy(ranked, w, pattern, 0.005);
        worst = std::max(worst, std::abs(e - spectra[sector][order.rank(pattern) - 1]));
      }
    }
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max |corners - dense| = %.2e, sectors 2 and 3, U in {0,1,2,4}, %.2f s",
                worst, secs);
  list.report(3, "corner energy reconstruction", worst <= 1e-8 && secs < 1.0, buf);
}

// --- 4. phase-average number projection ---------------------------------------

void criterion_fourier(Checklist& list) {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  int states = 0;
  for (int L = 2; L <= 5; ++L)
    for (int trial = 0; trial < 25; ++trial) {
      StateVector psi(doubled_space(L));
      for (auto& a : psi.amp) a = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
      psi.normalize();
      ++states;
      for (int n = 0; n <= L; ++n)
        worst = std::max(worst, max_abs_diff(project_physical_number(psi, n),
                                             project_number_fourier(psi, n)));
    }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max |fourier - direct| = %.2e over %d random doubled states, L <= 5",
                worst, states);
  list.report(4, "fourier number projection", worst <= 1e-12, buf);
}

// --- 5. free-field construction ------------------------------------------------

void criterion_free_field(Checklist& list) {
  std::mt19937_64 rng(13);
  double worst_pair = 0.0, worst_norm = 0.0, worst_vac = 0.0, worst_exp = 0.0;
  int trials = 0;
  for (int L = 2; L <= 6; ++L)
    for (int t = 0; t < 4; ++t) {
      std::vector<double> ws(L);
      for (auto& x : ws) x = uniform(rng, 0.05, 0.95);
      const WeightVector w = make_weights(ws);
      const StateVector direct = build_free_wfield(w);
      const StateVector rotated = apply_pair_rotations(w, vacuum_state(doubled_space(L)));
      worst_pair = std::max(worst_pair, max_abs_diff(direct, rotated));
      worst_norm = std::max(worst_norm, std::abs(direct.norm() - 1.0));
      const StateVector back = apply_pair_rotations(w, rotated, true);
      worst_vac = std::max(worst_vac, max_abs_diff(back, vacuum_state(doubled_space(L))));
      ++trials;
    }
  for (int L = 2; L <= 4; ++L) {
    std::vector<double> ws(L);
    for (auto& x : ws) x = uniform(rng, 0.1, 0.9);
    const WeightVector w = make_weights(ws);
    const auto angles = pair_angles(w);
    OperatorTerms gen;
    for (int m = 0; m < L; ++m) {
      gen.add(angles[m], {{m, true}, {L + m, true}});
      gen.add(-angles[m], {{L + m, false}, {m, false}});
    }
    const StateVector viaexp =
        testsupport::expm_apply(gen, vacuum_state(doubled_space(L)));
    worst_exp = std::max(worst_exp, max_abs_diff(build_free_wfield(w), viaexp));
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d weights: |product - rotations| <= %.2e, |norm-1| <= %.2e, "
                "inverse <= %.2e, |product - expm| <= %.2e",
                trials, worst_pair, worst_norm, worst_vac, worst_exp);
  list.report(5, "free-field construction", worst_pair <= 1e-12 && worst_norm <= 1e-12 &&
                                                worst_vac <= 1e-12 && worst_exp <= 1e-12,
              buf);
}

// --- shared optimizations -------------------------------------------------------

struct PhaseB {
  std::vector<double> us{0.0, 1.0, 2.0, 4.0};
  WeightVector w = default_weights(5);
  OptimizerSettings settings;
  std::vector<std::unique_ptr<EnsembleSolver>> solvers;  // four factorization steps
  std::vector<OptimizationResult> opts;
  std::vector<double> projection_worst;  // per coupling, sectors 2 and 3
  std::vector<double> margins;           // optimized E minus the ensemble minimum
  std::vector<double> dev1, dev4;        // one vs four steps, U in {1,2,4}
  double l8_energy = 0.0;
  double l8_margin = 0.0;
  double l8_projection_worst = 0.0;
  double experiment_seconds = 0.0;
  bool built = false;
  std::string error;
};

PhaseB build_phase_b() {
  PhaseB p;
  p.settings.tolerance = 1e-6;
  p.settings.max_iterations = 40000;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < p.us.size(); ++i) {
      p.solvers.push_back(std::make_unique<EnsembleSolver>(5, p.us[i], p.w, 4));
      p.opts.push_back(p.solvers[i]->optimize(p.settings, 2001 + i));
      p.margins.push_back(p.opts[i].value - p.solvers[i]->oracle_minimum());
      double worst = 0.0;
      for (const int sector : {2, 3})
        for (const auto& state : p.solvers[i]->projection_energies(p.opts[i].x, sector))
          worst = std::max(worst, std::abs(state.energy - state.oracle));
      p.projection_worst.push_back(worst);
    }
    for (std::size_t i = 1; i < p.us.size(); ++i) {
      EnsembleSolver single(5, p.us[i], p.w, 1);
      const auto opt = single.optimize(p.settings, 9001 + i);
      p.margins.push_back(opt.value - single.oracle_minimum());
      p.dev1.push_back(std::abs(opt.value - single.oracle_minimum()));
      p.dev4.push_back(std::abs(p.opts[i].value - p.solvers[i]->oracle_minimum()));
    }
    // eight sites: prepare, evaluate and read out at theta = 0 only
    EnsembleSolver smoke(8, 1.0, default_weights(8), 4);
    const std::vector<double> zeros(smoke.shape().n_params(), 0.0);
    p.l8_energy = smoke.energy(zeros);
    p.l8_margin = p.l8_energy - smoke.oracle_minimum();
    p.margins.push_back(p.l8_margin);
    for (const auto& state : smoke.projection_energies(zeros, 2))
      p.l8_projection_worst =
          std::max(p.l8_projection_worst, std::abs(state.energy - state.oracle));
    p.experiment_seconds = seconds_since(t0);
    p.built = true;
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

// --- 6. variational bound --------------------------------------------------------

void criterion_bound(Checklist& list, const PhaseB& p) {
  if (!p.built) {
    list.report(6, "variational lower bound", false, "setup failed: " + p.error);
    return;
  }
  double lowest = p.margins.front();
  for (const double m : p.margins) lowest = std::min(lowest, m);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "min(E - oracle minimum) = %.3e over %zu optimized energies",
                lowest, p.margins.size());
  list.report(6, "variational lower bound", lowest >= -1e-9, buf);
}

// --- 7. projection readout accuracy and runtime ----------------------------------

void criterion_projection(Checklist& list, const PhaseB& p) {
  if (!p.built) {
    list.report(7, "projection readout, L=5", false, "setup failed: " + p.error);
    return;
  }
  double worst = 0.0;
  std::string per;
  for (std::size_t i = 0; i < p.us.size(); ++i) {
    worst = std::max(worst, p.projection_worst[i]);
    char piece[48];
    std::snprintf(piece, sizeof piece, "%sU=%g: %.1e", i ? ", " : "", p.us[i],
                  p.projection_worst[i]);
    per += piece;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "; %.0f s total; L=8 smoke E = %.4f (readout %.1e)",
                p.experiment_seconds, p.l8_energy, p.l8_projection_worst);
  const bool passed =
      worst <= 2e-2 && p.experiment_seconds <= 600.0 && std::isfinite(p.l8_energy);
  std::string note;
  if (worst > 2e-2)
    note = "; slice energies land on exact eigenvalues as a set, but the optimizer's"
           " floor transposes two weight-rank pairs (N=2 ranks 7/9, N=3 ranks 3/5)";
  list.report(7, "projection readout, L=5", passed, per + buf + note);
}

// --- 8. finite-difference neutral gaps --------------------------------------------

void criterion_corner_gaps(Checklist& list, PhaseB& p) {
  if (!p.built) {
    list.report(8, "corner-route neutral gaps", false, "setup failed: " + p.error);
    return;
  }
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string per;
  for (std::size_t i = 0; i < p.us.size(); ++i) {
    for (const int sector : {2, 3}) {
      auto& solver = *p.solvers[i];
      const SectorEvaluator evaluate = [&](const WeightVector& wv) {
        return solver.sector_energy_fixed(p.opts[i].x, wv, sector);
      };
      const OrderingMap order = sector_ordering(p.w, sector);
      const double e1 = extract_eigenenergy(evaluate, p.w, order.by_rank[0], 0.005);
      const double e2 = extract_eigenenergy(evaluate, p.w, order.by_rank[1], 0.005);
      double analytic;
      if (sector == 2) {
        const auto closed = two_particle_spectrum_l5(p.us[i]);
        analytic = closed[1] - closed[0];
      } else {
        analytic = solver.spectra()[3][1] - solver.spectra()[3][0];
      }
      const double dev = std::abs((e2 - e1) - analytic);
      worst = std::max(worst, dev);
      char piece[64];
      std::snprintf(piece, sizeof piece, "%sU=%g/N=%d: %.1e",
                    per.empty() ? "" : ", ", p.us[i], sector, dev);
      per += piece;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "; %.0f s", seconds_since(t0));
  list.report(8, "corner-route neutral gaps", worst <= 2e-2, per + buf);
}

// --- 9. factorization depth ---------------------------------------------------------

void criterion_trotter(Checklist& list, const PhaseB& p) {
  if (!p.built) {
    list.report(9, "four steps beat one step", false, "setup failed: " + p.error);
    return;
  }
  bool ordered = true;
  std::string per;
  for (std::size_t k = 0; k < p.dev1.size(); ++k) {
    if (p.dev4[k] > p.dev1[k] + 1e-12) ordered = false;
    char piece[72];
    std::snprintf(piece, sizeof piece, "%sU=%g: %.2e <= %.2e", k ? ", " : "",
                  p.us[k + 1], p.dev4[k], p.dev1[k]);
    per += piece;
  }
  list.report(9, "four steps beat one step", ordered, per);
}

// --- 10. fixed-parameter linearity ----------------------------------------------------

void criterion_linearity(Checklist& list, const PhaseB& p) {
  if (!p.built) {
    list.report(10, "energy affine in each weight", false, "setup failed: " + p.error);
    return;
  }
  std::mt19937_64 rng(2026);
  std::vector<double> theta(static_cast<std::size_t>(p.solvers[1]->shape().n_params()));
  for (auto& t : theta) t = uniform(rng, -0.5, 0.5);
  const auto energy = [&](const WeightVector& wv) {
    return p.solvers[1]->energy(theta, wv);
  };
  double worst = 0.0;
  for (int mode = 0; mode < 5; ++mode) {
    const double base = p.w.ws[mode];
    const double step = std::min(0.02, std::min(base, 1.0 - base) / 2);
    const auto report =
        linearity_scan(energy, p.w, mode, {base - step, base, base + step});
    worst = std::max(worst, report.max_residual);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max 3-point affine residual = %.2e at fixed random parameters", worst);
  list.report(10, "energy affine in each weight", worst < 1e-9, buf);
}

// --- 11. reproducible outputs -----------------------------------------------------------

void criterion_reproducible(Checklist& list) {
  ExperimentConfig c;
  c.sites = 4;
  c.u_values = {0.0, 1.5};
  c.trotter_steps = 2;
  c.sectors = {1, 2};
  c.experiment_id = "acceptance";
  c.seed = 7;
  c.out_dir = "acceptance_out";
  c.optimizer.tolerance = 1e-6;
  c.optimizer.max_iterations = 6000;

  const auto r1 = run_spectrum(c);
  const std::string first = read_file(r1.csv_path);
  const auto r2 = run_spectrum(c);
  const std::string second = read_file(r2.csv_path);
  char buf[160];
  std::snprintf(buf, sizeof buf, "two runs, %zu bytes each, byte-identical: %s",
                first.size(), first == second ? "yes" : "no");
  list.report(11, "byte-stable spectrum output", !first.empty() && first == second, buf);
}

}  // namespace

int main() {
  Checklist list;
  criterion_block_constants(list);
  criterion_closed_form(list);
  criterion_reconstruction(list);
  criterion_fourier(list);
  criterion_free_field(list);

  PhaseB phase = build_phase_b();
  criterion_bound(list, phase);
  criterion_projection(list, phase);
  criterion_corner_gaps(list, phase);
  criterion_trotter(list, phase);
  criterion_linearity(list, phase);
  criterion_reproducible(list);

  std::printf("%d of 11 criteria passed\n", 11 - list.failures);
  return list.failures == 0 ? 0 : 1;
}
