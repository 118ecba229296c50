// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_FOCK_HPP
#define WFIELD_FOCK_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace wfield {

using cplx = std::complex<double>;

// Basis label for a Fock state: bit b set <=> mode b occupied.
using fock_index = std::uint32_t;

// Mode layout of a register. Physical modes come first (0 .. n_phys-1),
// tilde copies follow (n_phys .. n_phys+n_tilde-1). A plain register has
// n_tilde = 0; a doubled register has n_tilde = n_phys.
struct FockSpace {
  int n_phys = 0;
  int n_tilde = 0;

  int total_modes() const { return n_phys + n_tilde; }
  std::size_t dim() const { return std::size_t{1} << total_modes(); }
  bool operator==(const FockSpace&) const = default;
};

FockSpace doubled_space(int n_phys);
FockSpace plain_space(int n_modes);

// Dense amplitude vector over all 2^modes occupation patterns.
struct StateVector {
  FockSpace space;
  std::vector<cplx> amp;

  StateVector() = default;
  explicit StateVector(FockSpace s) : space(s), amp(s.dim(), cplx{0.0, 0.0}) {}

  double norm() const;
  void normalize();  // throws on vanishing norm
};

StateVector vacuum_state(FockSpace space);
StateVector basis_state(FockSpace space, fock_index idx);

// One c or c^dagger factor. Operator strings list factors left to right as
// written; application happens right to left.
struct ModeFactor {
  int mode = 0;
  bool dagger = false;
};

struct Term {
  cplx coeff{0.0, 0.0};
  std::vector<ModeFactor> factors;
};

// A finite linear combination of fermionic operator strings.
struct OperatorTerms {
  std::vector<Term> terms;

  OperatorTerms& add(cplx coeff, std::initializer_list<ModeFactor> factors);
  OperatorTerms& add(cplx coeff, std::vector<ModeFactor> factors);
};

// Number of occupied modes below `mode`, i.e. the Jordan-Wigner string.
inline int parity_below(fock_index idx, int mode) {
  return __builtin_popcount(idx & ((fock_index{1} << mode) - 1u)) & 1;
}

inline int physical_count(fock_index idx, const FockSpace& space) {
  return __builtin_popcount(idx & ((fock_index{1} << space.n_phys) - 1u));
}

inline int tilde_count(fock_index idx, const FockSpace& space) {
  return __builtin_popcount(idx >> space.n_phys);
}

// Applies one factor to a basis state in place. Returns false when the
// result vanishes; otherwise updates bits and flips sign per the
// Jordan-Wigner convention (strings run over lower mode indices).
inline bool apply_factor_to_basis(const ModeFactor& f, fock_index& bits, int& sign) {
  const fock_index mask = fock_index{1} << f.mode;
  if (f.dagger) {
    if (bits & mask) return false;
    if (parity_below(bits, f.mode)) sign = -sign;
    bits |= mask;
  } else {
    if (!(bits & mask)) return false;
    if (parity_below(bits, f.mode)) sign = -sign;
    bits &= ~mask;
  }
  return true;
}

// Applies a whole factor string (rightmost factor first) to a basis state.
bool apply_term_to_basis(const Term& t, fock_index in, fock_index& out, int& sign);

StateVector apply_mode_operator(const StateVector& psi, int mode, bool dagger);
StateVector apply_terms(const OperatorTerms& op, const StateVector& psi);

// <a|b>, conjugate linear in the first argument.
cplx inner(const StateVector& a, const StateVector& b);

// <psi| op |psi> without materializing op|psi>.
cplx expectation(const OperatorTerms& op, const StateVector& psi);

// Zeroes every amplitude whose physical occupation differs from n.
StateVector project_physical_number(const StateVector& psi, int n);

// Reverses factor order, toggles daggers, conjugates coefficients.
OperatorTerms adjoint(const OperatorTerms& op);

std::string pattern_string(fock_index pattern, int n_modes);

// ---------------------------------------------------------------------------
// Compiled forms. Applying a factor string to a basis state reduces to mask
// tests plus one parity: every occupancy requirement and every Jordan-Wigner
// parity along the string is a fixed function of the original bits.

struct CompiledTerm {
  cplx coeff{0.0, 0.0};
  fock_index must_one = 0;   // original bits required occupied
  fock_index must_zero = 0;  // original bits required empty
  fock_index flip = 0;       // target = bits ^ flip
  fock_index sign_mask = 0;  // sign = parity(bits & sign_mask) ^ sign_const
  int sign_const = 0;
  bool dead = false;  // annihilates every basis state
};

CompiledTerm compile_term(const Term& t, int total_modes);

struct CompiledOperator {
  int total_modes = 0;
  std::vector<CompiledTerm> terms;
};

CompiledOperator compile_operator(const OperatorTerms& op, int total_modes);

StateVector apply_compiled(const CompiledOperator& op, const StateVector& psi);
cplx expectation(const CompiledOperator& op, const StateVector& psi);

// One-parameter rotation exp(theta (P - P†)) for a factor string P acting on
// each mode at most once, with creations and annihilations disjoint. Such a
// string obeys P^2 = 0 with P†P, PP† projectors, so the exponential closes
// on {1, P - P†, (P - P†)^2} and acts as a plane rotation on the image
// pairs. Exact and unitary for any theta.
struct CompiledRotation {
  fock_index need_set = 0;    // support of P: these bits occupied ...
  fock_index need_clear = 0;  // ... and these empty
  fock_index flip = 0;
  fock_index sign_mask = 0;
  int sign_const = 0;
};

CompiledRotation compile_rotation(const std::vector<ModeFactor>& p, int total_modes);
void apply_rotation(double theta, const CompiledRotation& rot, StateVector& psi);

// Convenience wrapper: builds the compiled form and applies it.
void apply_string_rotation(double theta, const std::vector<ModeFactor>& p, StateVector& psi);

}  // namespace wfield

#endif  // WFIELD_FOCK_HPP
