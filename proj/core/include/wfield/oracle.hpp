// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_ORACLE_HPP
#define WFIELD_ORACLE_HPP

#include <vector>

#include "wfield/fock.hpp"
#include "wfield/weights.hpp"

// Independent reference results computed by dense linear algebra. Everything
// here is brute force on purpose: it is the yardstick the variational side is
// measured against, so it shares no code with the ansatz machinery beyond the
// operator representation itself.

namespace wfield::oracle {

using Matrix = std::vector<std::vector<cplx>>;

struct Eigensystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j belongs to values[j]
};

// Cyclic Jacobi for complex Hermitian matrices. Throws if the input is not
// Hermitian to 1e-10 or fails to converge.
Eigensystem hermitian_eigensystem(Matrix a, int max_sweeps = 60);

// Dense matrix of an operator over the full Fock space of `space`.
Matrix dense_matrix(const OperatorTerms& h, const FockSpace& space);

// Occupation patterns with n of `modes` bits set, ascending as integers.
std::vector<fock_index> sector_patterns(int modes, int n);

// Dense block of a number-conserving operator in the n-particle sector of a
// plain `modes`-mode space. Throws if the operator leaks out of the sector.
Matrix sector_matrix(const OperatorTerms& h, int modes, int n);

std::vector<double> sector_spectrum(const OperatorTerms& h, int modes, int n);

// Spectra of every sector n = 0..modes, index by particle number.
std::vector<std::vector<double>> all_sector_spectra(const OperatorTerms& h, int modes);

// Best possible ensemble energy for the given weights: within each particle
// sector the descending weights pair with the ascending eigenvalues.
double ensemble_minimum(const WeightVector& w,
                        const std::vector<std::vector<double>>& spectra);

// Sector energy with a frozen pattern-to-rank assignment: sum over the
// order's patterns of mu^pattern times spectrum[rank - 1]. Multilinear in
// every mu_m because the assignment does not follow w.
double sector_energy_ranked(const WeightVector& w, const OrderingMap& order,
                            const std::vector<double>& spectrum);

// The n-particle sector energy of the ideally optimized ensemble, divided by
// the common product over (1 - w_m): sector_energy_ranked with the ordering
// of w itself.
double sector_energy_ideal(const WeightVector& w, int n,
                           const std::vector<double>& spectrum);

// Additive-spectrum ensembles: the energy of pattern n recovered from the
// mixed partial derivatives of E(w) = sum_m w_m omega_m, by central
// differences with step 1e-5. Equals the sum of omega_m over occupied modes.
double derivative_extraction_noninteracting(const std::vector<double>& omegas,
                                            const WeightVector& w, fock_index pattern);

}  // namespace wfield::oracle

#endif  // WFIELD_ORACLE_HPP
