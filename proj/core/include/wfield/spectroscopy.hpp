// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_SPECTROSCOPY_HPP
#define WFIELD_SPECTROSCOPY_HPP

#include <functional>
#include <vector>

#include "wfield/fock.hpp"
#include "wfield/weights.hpp"

namespace wfield {

// Readout of individual eigenstates and eigenvalues from an optimized
// doubled-space ensemble state
//   |psi> = U(theta) |0(w)> = sum_n sqrt(w_n) (+-) |psi_n> (x) |n~>.

// The physical component attached to tilde pattern `pattern`, normalized.
// `weight` is the squared norm that was stripped, ideally w_pattern.
struct ExtractedState {
  StateVector state;
  double weight = 0.0;
};

// Throws when the captured squared norm is below 1e-10 (the pattern carries
// no ensemble weight, so no state can be read off).
ExtractedState extract_eigenstate(const StateVector& psi, fock_index pattern);

// Real expectation value with a guard on the residual imaginary part.
double state_energy(const CompiledOperator& h, const StateVector& psi);

// N-particle slice of the ensemble energy divided by prod_m (1 - w_m):
//   E_N(w) = <psi| H P_N |psi> / D(w) = sum_{|n|=N} mu^n E_n.
// q = 0 projects exactly; q >= N+1 and q >= L+1 uses the phase-average
// projector on q points. psi must come from an optimization at weights w.
double sector_ensemble_energy(const CompiledOperator& h, const StateVector& psi,
                              int n_particles, const WeightVector& w, int q = 0);

// Anything that can produce E_N for a weight vector: the exact ranked form,
// a fixed-parameter ansatz readout, or a full re-optimization.
using SectorEvaluator = std::function<double(const WeightVector&)>;

// One eigenvalue from nested finite differences of E_N over the 2^N corner
// weight vectors where each mode in `occupied` switches between its w and
// wprime value (all other modes stay at w), divided by the product of
// mu_m(w) - mu_m(wprime). Exact for evaluators multilinear in mu.
// Refuses when w and wprime order the |occupied|-particle patterns
// differently, or when some mu difference is below 1e-12.
double extract_eigenenergy(const SectorEvaluator& evaluate, const WeightVector& w,
                           const WeightVector& wprime, const std::vector<int>& occupied);

// Same, with wprime = w + delta on every mode and the occupied list taken
// from the bits of `pattern`.
double extract_eigenenergy(const SectorEvaluator& evaluate, const WeightVector& w,
                           fock_index pattern, double delta = 0.005);

// Noninteracting shortcut: with additive eigenvalues, E_n is the sum of
// dE/dw_m over the occupied modes. Central differences with step h on the
// full ensemble energy evaluator.
double eigenenergy_from_derivatives(const std::function<double(const WeightVector&)>& energy,
                                    const WeightVector& w, fock_index pattern,
                                    double h = 1e-5);

// Charge-type differences around sector n:
//   minus = E(n-1) - E(n), plus = E(n) - E(n+1), gap = minus - plus.
struct GapResult {
  double minus = 0.0;
  double plus = 0.0;
  double gap = 0.0;
};

// From precomputed sector ground energies (index = particle number).
GapResult particle_gaps(const std::vector<double>& ground_by_sector, int n);

// Finite-difference route: each neighbouring sector's ground energy is
// read off with extract_eigenenergy at that sector's top-weight pattern.
// The evaluator receives the weight vector and the sector.
GapResult gaps(const std::function<double(const WeightVector&, int)>& evaluate,
               const WeightVector& w, const WeightVector& wprime, int n);

// Scan of the full ensemble energy against w_mode on the given grid. Points
// are split into runs over which every sector ordering stays constant; each
// run with at least 3 points gets a least-squares affine fit. At fixed
// ansatz parameters the energy is affine in any single w_m, so max_residual
// is a quality diagnostic for re-optimized scans.
struct LinearityReport {
  int mode = 0;
  std::vector<double> ws;
  std::vector<double> energies;
  std::vector<int> segment;  // run id per point
  double max_residual = 0.0;
};

LinearityReport linearity_scan(const std::function<double(const WeightVector&)>& energy,
                               const WeightVector& w, int mode,
                               const std::vector<double>& grid);

}  // namespace wfield

#endif  // WFIELD_SPECTROSCOPY_HPP
