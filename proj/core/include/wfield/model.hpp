// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_MODEL_HPP
#define WFIELD_MODEL_HPP

#include <array>
#include <utility>
#include <vector>

#include "wfield/fock.hpp"

namespace wfield {

// Periodic spinless-fermion chain with nearest-neighbour repulsion:
//   H = -sum_m ( c+_m c_{m+1} + c+_{m+1} c_m - u n_m n_{m+1} ),  site L == site 0.
struct HubbardSpec {
  int sites = 0;
  double u = 0.0;
};

// Site-basis operator. Acts on physical modes 0..L-1.
OperatorTerms hubbard_site_terms(const HubbardSpec& spec);

// Diagonal free Hamiltonian sum_m omega_m n_m.
OperatorTerms noninteracting_terms(const std::vector<double>& omegas);

// Single-particle energies of the periodic hopping, eps_k = -2 cos(2 pi k / L),
// indexed by momentum k = 0..L-1.
std::vector<double> bloch_energies(int sites);

// Momentum-orbital labeling used by the ensemble pipeline: mode m carries the
// momentum with the m-th lowest single-particle energy (stable in k). The
// hopping is then diagonal with non-decreasing mode energies, which matches
// single-mode weights that decrease with the mode index.
struct BlochBasis {
  std::vector<int> momentum_of_mode;
  std::vector<double> energy_of_mode;
};

BlochBasis bloch_basis(int sites);

// The same Hamiltonian written in the momentum orbitals of bloch_basis():
//   sum_k eps_k n_k + (u/L) sum delta(k1 - k2 + k3 - k4)
//                     exp(i (k3 - k4) 2 pi / L) c+_{k1} c_{k2} c+_{k3} c_{k4}.
// Unitarily equivalent to hubbard_site_terms sector by sector. The quartic
// part is Hermitian only as a whole; individual strings pair up after normal
// ordering.
OperatorTerms hubbard_bloch_terms(const HubbardSpec& spec);

// --- closed-form two-particle solution, 5 sites -----------------------------
// For L = 5, N = 2 the interaction couples momentum pairs (a,b) and (c,d)
// with a+b = c+d (mod 5) pairwise, giving five 2x2 blocks
//   [ eps_ab + D u      +- R u          ]
//   [ +- R u            eps_cd + (1-D) u ]
// with the constants below.

inline constexpr int kBlockSites = 5;

// R = 2 [cos(2 pi/5) - cos(4 pi/5)] / 5
double block_coupling_r();
// D = 2 [2 + cos(2 pi/5) + 2 cos(4 pi/5)] / 5
double block_occupation_d();

struct PairBlock {
  std::array<int, 2> ab;  // adjacent momenta, spacing +-1 mod 5: gets D u
  std::array<int, 2> cd;  // spacing +-2 mod 5: gets (1 - D) u
};

// The five coupled momentum-pair blocks: (0,1)-(2,4), (3,4)-(0,2),
// (1,2)-(0,3), (0,4)-(1,3), (2,3)-(1,4).
std::vector<PairBlock> two_particle_blocks();

// Eigenvalues (E-, E+) of one block given the two pair energies.
std::pair<double, double> block_eigenvalues(double u, double eps_ab, double eps_cd);

// All ten two-particle eigenvalues for L = 5, sorted ascending.
std::vector<double> two_particle_spectrum_l5(double u);

}  // namespace wfield

#endif  // WFIELD_MODEL_HPP
