// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/wfield_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wfield {

std::vector<double> pair_angles(const WeightVector& w) {
  std::vector<double> theta(w.ws.size());
  for (std::size_t m = 0; m < w.ws.size(); ++m) theta[m] = std::acos(std::sqrt(1.0 - w.ws[m]));
  return theta;
}

StateVector build_free_wfield(const WeightVector& w) {
  const int L = w.n_modes();
  StateVector psi(doubled_space(L));
  const fock_index n = fock_index{1} << L;
  for (fock_index pattern = 0; pattern < n; ++pattern) {
    // operator string for this pattern: pairs in mode order, applied to |vac>
    fock_index bits = 0;
    int sign = 1;
    bool ok = true;
    for (int m = L - 1; m >= 0 && ok; --m) {
      if (!(pattern & (fock_index{1} << m))) continue;
      // rightmost factors act first: ctilde+_m then c+_m
      ok = apply_factor_to_basis({L + m, true}, bits, sign) &&
           apply_factor_to_basis({m, true}, bits, sign);
    }
    if (!ok) throw std::runtime_error("build_free_wfield: pair creation annihilated the state");
    double amp = 1.0;
    for (int m = 0; m < L; ++m) {
      const double wm = w.ws[static_cast<std::size_t>(m)];
      amp *= std::sqrt((pattern & (fock_index{1} << m)) ? wm : 1.0 - wm);
    }
    psi.amp[bits] += double(sign) * amp;
  }
  return psi;
}

StateVector apply_pair_rotations(const WeightVector& w, const StateVector& psi, bool negate) {
  const int L = w.n_modes();
  if (psi.space.n_phys != L || psi.space.n_tilde != L)
    throw std::invalid_argument("apply_pair_rotations: psi is not a doubled register over L modes");
  const std::vector<double> theta = pair_angles(w);
  StateVector out = psi;
  for (int m = 0; m < L; ++m) {
    const std::vector<ModeFactor> p{{m, true}, {L + m, true}};
    apply_string_rotation(negate ? -theta[static_cast<std::size_t>(m)]
                                 : theta[static_cast<std::size_t>(m)],
                          p, out);
  }
  return out;
}

StateVector project_number_fourier(const StateVector& psi, int n, int q) {
  const int L = psi.space.n_phys;
  if (n < 0) throw std::invalid_argument("project_number_fourier: negative particle number");
  if (q < L + 1)
    throw std::invalid_argument("project_number_fourier: Q = " + std::to_string(q) +
                                " aliases occupations 0.." + std::to_string(L) +
                                "; need Q >= L + 1");
  if (q < n + 1)
    throw std::invalid_argument("project_number_fourier: Q = " + std::to_string(q) +
                                " aliases the requested number " + std::to_string(n));

  // The integrand depends on the basis state only through its physical count,
  // so the quadrature reduces to one complex factor per occupation.
  std::vector<cplx> factor(static_cast<std::size_t>(L) + 1, cplx{0.0, 0.0});
  for (int p = 0; p <= L; ++p) {
    cplx acc{0.0, 0.0};
    for (int k = 0; k < q; ++k) {
      const double phi = 2.0 * std::numbers::pi * double(k) / double(q);
      acc += std::polar(1.0, phi * double(p - n));
    }
    factor[static_cast<std::size_t>(p)] = acc / double(q);
  }

  StateVector out = psi;
  const std::size_t dim = psi.amp.size();
  for (std::size_t b = 0; b < dim; ++b)
    out.amp[b] *= factor[static_cast<std::size_t>(
        physical_count(static_cast<fock_index>(b), psi.space))];
  return out;
}

StateVector project_number_fourier(const StateVector& psi, int n) {
  return project_number_fourier(psi, n, 2 * psi.space.n_phys + 1);
}

}  // namespace wfield
