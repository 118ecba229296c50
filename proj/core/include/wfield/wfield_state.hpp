// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_WFIELD_STATE_HPP
#define WFIELD_WFIELD_STATE_HPP

#include <vector>

#include "wfield/fock.hpp"
#include "wfield/weights.hpp"

namespace wfield {

// Mixing angles of the pair rotations: cos(theta_m) = sqrt(1 - w_m).
std::vector<double> pair_angles(const WeightVector& w);

// Free w-field over the doubled register, built by expanding the product
//   prod_m [ sqrt(1-w_m) + sqrt(w_m) c+_m ctilde+_m ] |vac>
// with exact operator strings. Mode m pairs with tilde mode L+m, so only
// pair-matched occupations carry amplitude; reordering the pair creators
// into bit order contributes (-1)^(k(k-1)/2) on k-pair patterns.
StateVector build_free_wfield(const WeightVector& w);

// Applies prod_m exp(theta_m (c+_m ctilde+_m - ctilde_m c_m)) to psi.
// With psi the doubled vacuum this reproduces build_free_wfield. The factors
// commute (each is even and touches its own pair), so the order is immaterial.
// negate = true applies the inverse.
StateVector apply_pair_rotations(const WeightVector& w, const StateVector& psi,
                                 bool negate = false);

// Projection onto physical particle number n by a discretized phase average:
//   (1/Q) sum_q exp(-i n phi_q) exp(i phi_q N_phys) psi,   phi_q = 2 pi q / Q.
// Exact (equal to the direct projection) whenever Q > max(n_phys, n); the
// quadrature aliases n mod Q onto other occupations otherwise.
StateVector project_number_fourier(const StateVector& psi, int n, int q);

// Same with the default Q = 2 n_phys + 1.
StateVector project_number_fourier(const StateVector& psi, int n);

}  // namespace wfield

#endif  // WFIELD_WFIELD_STATE_HPP
