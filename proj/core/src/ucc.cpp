// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/ucc.hpp"

#include <cmath>
#include <stdexcept>

namespace wfield {

namespace {

std::vector<ModeFactor> singles_string(const SinglesIndex& s) {
  if (s.i < 0 || s.i >= s.j)
    throw std::invalid_argument("ucc: singles index needs 0 <= i < j");
  return {{s.i, true}, {s.j, false}};
}

std::vector<ModeFactor> doubles_string(const DoublesIndex& d) {
  const bool ordered = d.i >= 0 && d.i < d.j && d.k < d.l && d.i < d.k;
  const bool disjoint = d.i != d.k && d.i != d.l && d.j != d.k && d.j != d.l;
  if (!ordered || !disjoint)
    throw std::invalid_argument("ucc: doubles index needs two disjoint ordered pairs");
  return {{d.i, true}, {d.j, true}, {d.l, false}, {d.k, false}};
}

void check_theta(const AnsatzShape& shape, const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != shape.n_params())
    throw std::invalid_argument("ucc: parameter count does not match shape");
  if (shape.trotter_steps < 1)
    throw std::invalid_argument("ucc: trotter_steps must be positive");
}

}  // namespace

AnsatzShape uccsd_shape(int n_modes, int trotter_steps) {
  if (n_modes < 2) throw std::invalid_argument("ucc: need at least 2 modes");
  if (trotter_steps < 1) throw std::invalid_argument("ucc: trotter_steps must be positive");
  AnsatzShape shape;
  shape.n_modes = n_modes;
  shape.trotter_steps = trotter_steps;
  for (int a = 0; a < n_modes; ++a)
    for (int b = a + 1; b < n_modes; ++b)
      for (int c = b + 1; c < n_modes; ++c)
        for (int d = c + 1; d < n_modes; ++d) {
          shape.doubles.push_back({a, b, c, d});
          shape.doubles.push_back({a, c, b, d});
          shape.doubles.push_back({a, d, b, c});
        }
  for (int i = 0; i < n_modes; ++i)
    for (int j = i + 1; j < n_modes; ++j) shape.singles.push_back({i, j});
  return shape;
}

void apply_single_rotation(double theta, const SinglesIndex& s, StateVector& psi) {
  apply_string_rotation(theta, singles_string(s), psi);
}

void apply_double_rotation(double theta, const DoublesIndex& d, StateVector& psi) {
  apply_string_rotation(theta, doubles_string(d), psi);
}

void apply_ansatz(const AnsatzShape& shape, const std::vector<double>& theta,
                  StateVector& psi) {
  check_theta(shape, theta);
  const double inv = 1.0 / shape.trotter_steps;
  for (int step = 0; step < shape.trotter_steps; ++step) {
    int p = 0;
    for (const auto& d : shape.doubles) apply_double_rotation(theta[p++] * inv, d, psi);
    for (const auto& s : shape.singles) apply_single_rotation(theta[p++] * inv, s, psi);
  }
}

CompiledAnsatz compile_ansatz(const AnsatzShape& shape, const FockSpace& space) {
  if (shape.n_modes > space.n_phys)
    throw std::invalid_argument("ucc: shape has more modes than the space");
  CompiledAnsatz out;
  out.trotter_steps = shape.trotter_steps;
  out.rotations.reserve(shape.doubles.size() + shape.singles.size());
  for (const auto& d : shape.doubles)
    out.rotations.push_back(compile_rotation(doubles_string(d), space.total_modes()));
  for (const auto& s : shape.singles)
    out.rotations.push_back(compile_rotation(singles_string(s), space.total_modes()));
  return out;
}

void apply_compiled_ansatz(const CompiledAnsatz& ansatz,
                           const std::vector<double>& theta, StateVector& psi) {
  if (theta.size() != ansatz.rotations.size())
    throw std::invalid_argument("ucc: parameter count does not match compiled ansatz");
  const double inv = 1.0 / ansatz.trotter_steps;
  for (int step = 0; step < ansatz.trotter_steps; ++step)
    for (std::size_t p = 0; p < theta.size(); ++p)
      apply_rotation(theta[p] * inv, ansatz.rotations[p], psi);
}

double ensemble_energy(const CompiledOperator& h, const CompiledAnsatz& ansatz,
                       const std::vector<double>& theta, const StateVector& psi0) {
  StateVector psi = psi0;
  apply_compiled_ansatz(ansatz, theta, psi);
  const cplx e = expectation(h, psi);
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real())))
    throw std::runtime_error("ucc: expectation has a large imaginary part");
  return e.real();
}

}  // namespace wfield
