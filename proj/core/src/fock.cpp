// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace wfield {

namespace {
constexpr int kMaxModes = 26;  // dense storage; 2^26 amplitudes is already 1 GiB

void check_space(const FockSpace& s) {
  if (s.n_phys < 0 || s.n_tilde < 0 || s.total_modes() <= 0 || s.total_modes() > kMaxModes)
    throw std::invalid_argument("FockSpace: mode count out of range");
}
}  // namespace

FockSpace doubled_space(int n_phys) {
  FockSpace s{n_phys, n_phys};
  check_space(s);
  return s;
}

FockSpace plain_space(int n_modes) {
  FockSpace s{n_modes, 0};
  check_space(s);
  return s;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n < 1e-300) throw std::runtime_error("StateVector::normalize: vanishing norm");
  const double inv = 1.0 / n;
  for (cplx& a : amp) a *= inv;
}

StateVector vacuum_state(FockSpace space) {
  check_space(space);
  StateVector psi(space);
  psi.amp[0] = 1.0;
  return psi;
}

StateVector basis_state(FockSpace space, fock_index idx) {
  check_space(space);
  StateVector psi(space);
  if (idx >= psi.space.dim()) throw std::invalid_argument("basis_state: index out of range");
  psi.amp[idx] = 1.0;
  return psi;
}

OperatorTerms& OperatorTerms::add(cplx coeff, std::initializer_list<ModeFactor> factors) {
  terms.push_back(Term{coeff, std::vector<ModeFactor>(factors)});
  return *this;
}

OperatorTerms& OperatorTerms::add(cplx coeff, std::vector<ModeFactor> factors) {
  terms.push_back(Term{coeff, std::move(factors)});
  return *this;
}

bool apply_term_to_basis(const Term& t, fock_index in, fock_index& out, int& sign) {
  fock_index bits = in;
  int s = 1;
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
    if (!apply_factor_to_basis(*it, bits, s)) return false;
  }
  out = bits;
  sign = s;
  return true;
}

namespace {
void check_modes(const Term& t, int total_modes) {
  for (const ModeFactor& f : t.factors) {
    if (f.mode < 0 || f.mode >= total_modes)
      throw std::invalid_argument("operator factor touches mode " + std::to_string(f.mode) +
                                  " outside a register with " + std::to_string(total_modes) +
                                  " modes");
  }
}
}  // namespace

StateVector apply_mode_operator(const StateVector& psi, int mode, bool dagger) {
  if (mode < 0 || mode >= psi.space.total_modes())
    throw std::invalid_argument("apply_mode_operator: mode out of range");
  StateVector out(psi.space);
  const fock_index mask = fock_index{1} << mode;
  const std::size_t dim = psi.amp.size();
  for (std::size_t b = 0; b < dim; ++b) {
    const cplx& a = psi.amp[b];
    if (a == cplx{0.0, 0.0}) continue;
    fock_index bits = static_cast<fock_index>(b);
    const bool occupied = bits & mask;
    if (dagger == occupied) continue;
    const int sign = parity_below(bits, mode) ? -1 : 1;
    out.amp[bits ^ mask] += double(sign) * a;
  }
  return out;
}

StateVector apply_terms(const OperatorTerms& op, const StateVector& psi) {
  StateVector out(psi.space);
  const int total = psi.space.total_modes();
  const std::size_t dim = psi.amp.size();
  for (const Term& t : op.terms) {
    check_modes(t, total);
    if (t.coeff == cplx{0.0, 0.0}) continue;
    for (std::size_t b = 0; b < dim; ++b) {
      const cplx& a = psi.amp[b];
      if (a == cplx{0.0, 0.0}) continue;
      fock_index target;
      int sign;
      if (!apply_term_to_basis(t, static_cast<fock_index>(b), target, sign)) continue;
      out.amp[target] += t.coeff * double(sign) * a;
    }
  }
  return out;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (!(a.space == b.space)) throw std::invalid_argument("inner: register mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

cplx expectation(const OperatorTerms& op, const StateVector& psi) {
  const int total = psi.space.total_modes();
  const std::size_t dim = psi.amp.size();
  cplx acc{0.0, 0.0};
  for (const Term& t : op.terms) {
    check_modes(t, total);
    if (t.coeff == cplx{0.0, 0.0}) continue;
    cplx overlap{0.0, 0.0};
    for (std::size_t b = 0; b < dim; ++b) {
      const cplx& a = psi.amp[b];
      if (a == cplx{0.0, 0.0}) continue;
      fock_index target;
      int sign;
      if (!apply_term_to_basis(t, static_cast<fock_index>(b), target, sign)) continue;
      overlap += std::conj(psi.amp[target]) * (double(sign) * a);
    }
    acc += t.coeff * overlap;
  }
  return acc;
}

StateVector project_physical_number(const StateVector& psi, int n) {
  StateVector out = psi;
  const std::size_t dim = psi.amp.size();
  for (std::size_t b = 0; b < dim; ++b) {
    if (physical_count(static_cast<fock_index>(b), psi.space) != n) out.amp[b] = 0.0;
  }
  return out;
}

OperatorTerms adjoint(const OperatorTerms& op) {
  OperatorTerms out;
  out.terms.reserve(op.terms.size());
  for (const Term& t : op.terms) {
    Term a;
    a.coeff = std::conj(t.coeff);
    a.factors.assign(t.factors.rbegin(), t.factors.rend());
    for (ModeFactor& f : a.factors) f.dagger = !f.dagger;
    out.terms.push_back(std::move(a));
  }
  return out;
}

std::string pattern_string(fock_index pattern, int n_modes) {
  std::string s(static_cast<std::size_t>(n_modes), '0');
  for (int m = 0; m < n_modes; ++m) {
    if (pattern & (fock_index{1} << m)) s[static_cast<std::size_t>(m)] = '1';
  }
  return s;  // mode 0 printed leftmost
}

namespace {
inline int parity(fock_index x) { return __builtin_popcount(x) & 1; }
}  // namespace

CompiledTerm compile_term(const Term& t, int total_modes) {
  check_modes(t, total_modes);
  CompiledTerm c;
  c.coeff = t.coeff;
  fock_index toggled = 0;  // bits flipped by the factors already applied
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
    const fock_index mask = fock_index{1} << it->mode;
    const fock_index below = mask - 1u;
    // occupancy requirement on the original bits: the factor sees
    // bits ^ toggled and needs that bit clear (dagger) or set (no dagger)
    const bool want_one = it->dagger == bool(toggled & mask);
    if (want_one) {
      if (c.must_zero & mask) c.dead = true;
      c.must_one |= mask;
    } else {
      if (c.must_one & mask) c.dead = true;
      c.must_zero |= mask;
    }
    c.sign_mask ^= below;
    c.sign_const ^= parity(toggled & below);
    toggled ^= mask;
  }
  c.flip = toggled;
  return c;
}

CompiledOperator compile_operator(const OperatorTerms& op, int total_modes) {
  CompiledOperator c;
  c.total_modes = total_modes;
  c.terms.reserve(op.terms.size());
  for (const Term& t : op.terms) {
    CompiledTerm ct = compile_term(t, total_modes);
    if (!ct.dead && ct.coeff != cplx{0.0, 0.0}) c.terms.push_back(ct);
  }
  return c;
}

StateVector apply_compiled(const CompiledOperator& op, const StateVector& psi) {
  if (psi.space.total_modes() != op.total_modes)
    throw std::invalid_argument("apply_compiled: register mismatch");
  StateVector out(psi.space);
  const std::size_t dim = psi.amp.size();
  for (const CompiledTerm& t : op.terms) {
    for (std::size_t b = 0; b < dim; ++b) {
      const fock_index bits = static_cast<fock_index>(b);
      if ((bits & t.must_one) != t.must_one || (bits & t.must_zero)) continue;
      const cplx& a = psi.amp[b];
      if (a == cplx{0.0, 0.0}) continue;
      const double s = (parity(bits & t.sign_mask) ^ t.sign_const) ? -1.0 : 1.0;
      out.amp[bits ^ t.flip] += t.coeff * (s * a);
    }
  }
  return out;
}

cplx expectation(const CompiledOperator& op, const StateVector& psi) {
  if (psi.space.total_modes() != op.total_modes)
    throw std::invalid_argument("expectation: register mismatch");
  const std::size_t dim = psi.amp.size();
  cplx acc{0.0, 0.0};
  for (const CompiledTerm& t : op.terms) {
    cplx overlap{0.0, 0.0};
    for (std::size_t b = 0; b < dim; ++b) {
      const fock_index bits = static_cast<fock_index>(b);
      if ((bits & t.must_one) != t.must_one || (bits & t.must_zero)) continue;
      const cplx& a = psi.amp[b];
      if (a == cplx{0.0, 0.0}) continue;
      const double s = (parity(bits & t.sign_mask) ^ t.sign_const) ? -1.0 : 1.0;
      overlap += std::conj(psi.amp[bits ^ t.flip]) * (s * a);
    }
    acc += t.coeff * overlap;
  }
  return acc;
}

CompiledRotation compile_rotation(const std::vector<ModeFactor>& p, int total_modes) {
  if (p.empty()) throw std::invalid_argument("compile_rotation: empty generator string");
  fock_index seen = 0;
  for (const ModeFactor& f : p) {
    const fock_index mask = fock_index{1} << f.mode;
    if (seen & mask)
      throw std::invalid_argument("compile_rotation: generator touches mode " +
                                  std::to_string(f.mode) + " twice");
    seen |= mask;
  }
  Term t;
  t.coeff = 1.0;
  t.factors = p;
  const CompiledTerm c = compile_term(t, total_modes);
  CompiledRotation rot;
  rot.need_set = c.must_one;
  rot.need_clear = c.must_zero;
  rot.flip = c.flip;
  rot.sign_mask = c.sign_mask;
  rot.sign_const = c.sign_const;
  return rot;
}

void apply_rotation(double theta, const CompiledRotation& rot, StateVector& psi) {
  const double co = std::cos(theta);
  const double si = std::sin(theta);
  const std::size_t dim = psi.amp.size();
  for (std::size_t b = 0; b < dim; ++b) {
    const fock_index bits = static_cast<fock_index>(b);
    if ((bits & rot.need_set) != rot.need_set || (bits & rot.need_clear)) continue;
    // bits is in the support of P; partner carries the P-image
    const fock_index partner = bits ^ rot.flip;
    const double s = (parity(bits & rot.sign_mask) ^ rot.sign_const) ? -si : si;
    const cplx u = psi.amp[b];
    const cplx v = psi.amp[partner];
    psi.amp[b] = co * u - s * v;
    psi.amp[partner] = co * v + s * u;
  }
}

void apply_string_rotation(double theta, const std::vector<ModeFactor>& p, StateVector& psi) {
  apply_rotation(theta, compile_rotation(p, psi.space.total_modes()), psi);
}

}  // namespace wfield
