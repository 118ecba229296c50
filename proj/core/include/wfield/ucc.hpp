// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_UCC_HPP
#define WFIELD_UCC_HPP

#include <vector>

#include "wfield/fock.hpp"

namespace wfield {

// Number-conserving unitary ansatz on the physical modes, built from
// generalized singles and paired doubles in factorized form:
//   U(theta) = [ prod_d exp((theta_d/n) T_d) prod_s exp((theta_s/n) T_s) ]^n
// with n = trotter_steps. Factor order is fixed (doubles in enumeration
// order, then singles), so U is a deterministic function of theta.

// T = c+_i c_j - c+_j c_i, i < j.
struct SinglesIndex {
  int i = 0, j = 0;
};

// T = c+_i c+_j c_l c_k - h.c., all four indices distinct, i < j, k < l,
// i the smallest of the four. Swapping the pairs inverts the generator, so
// each unordered pairing appears once.
struct DoublesIndex {
  int i = 0, j = 0, k = 0, l = 0;
};

struct AnsatzShape {
  int n_modes = 0;
  int trotter_steps = 1;
  std::vector<DoublesIndex> doubles;
  std::vector<SinglesIndex> singles;

  int n_params() const {
    return static_cast<int>(doubles.size() + singles.size());
  }
};

// All singles (L choose 2) and all pair doubles (3 per 4-subset of modes),
// enumerated in lexicographic order.
AnsatzShape uccsd_shape(int n_modes, int trotter_steps = 1);

// One rotation factor applied in place. The state may live in a larger space
// (tilde modes above the physical ones are untouched).
void apply_single_rotation(double theta, const SinglesIndex& s, StateVector& psi);
void apply_double_rotation(double theta, const DoublesIndex& d, StateVector& psi);

void apply_ansatz(const AnsatzShape& shape, const std::vector<double>& theta,
                  StateVector& psi);

// Mask form of the full factor sequence for repeated evaluation.
struct CompiledAnsatz {
  int trotter_steps = 1;
  std::vector<CompiledRotation> rotations;  // doubles then singles
};

CompiledAnsatz compile_ansatz(const AnsatzShape& shape, const FockSpace& space);

void apply_compiled_ansatz(const CompiledAnsatz& ansatz,
                           const std::vector<double>& theta, StateVector& psi);

// <psi0| U+ H U |psi0> for Hermitian H. Throws if a residual imaginary part
// above 1e-10 shows up.
double ensemble_energy(const CompiledOperator& h, const CompiledAnsatz& ansatz,
                       const std::vector<double>& theta, const StateVector& psi0);

}  // namespace wfield

#endif  // WFIELD_UCC_HPP
