// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace wfield {

namespace {

void check_sites(int sites) {
  if (sites < 2) throw std::invalid_argument("model: need at least 2 sites");
  if (sites > 20) throw std::invalid_argument("model: more than 20 sites not supported");
}

}  // namespace

OperatorTerms hubbard_site_terms(const HubbardSpec& spec) {
  check_sites(spec.sites);
  const int L = spec.sites;
  OperatorTerms h;
  for (int m = 0; m < L; ++m) {
    const int p = (m + 1) % L;
    h.add(-1.0, {{m, true}, {p, false}});
    h.add(-1.0, {{p, true}, {m, false}});
    if (spec.u != 0.0)
      h.add(spec.u, {{m, true}, {m, false}, {p, true}, {p, false}});
  }
  return h;
}

OperatorTerms noninteracting_terms(const std::vector<double>& omegas) {
  OperatorTerms h;
  for (int m = 0; m < static_cast<int>(omegas.size()); ++m)
    h.add(omegas[m], {{m, true}, {m, false}});
  return h;
}

std::vector<double> bloch_energies(int sites) {
  check_sites(sites);
  std::vector<double> eps(sites);
  for (int k = 0; k < sites; ++k)
    eps[k] = -2.0 * std::cos(2.0 * std::numbers::pi * k / sites);
  return eps;
}

BlochBasis bloch_basis(int sites) {
  const auto eps = bloch_energies(sites);
  BlochBasis basis;
  basis.momentum_of_mode.resize(sites);
  std::iota(basis.momentum_of_mode.begin(), basis.momentum_of_mode.end(), 0);
  std::stable_sort(basis.momentum_of_mode.begin(), basis.momentum_of_mode.end(),
                   [&eps](int a, int b) { return eps[a] < eps[b]; });
  basis.energy_of_mode.resize(sites);
  for (int m = 0; m < sites; ++m)
    basis.energy_of_mode[m] = eps[basis.momentum_of_mode[m]];
  return basis;
}

OperatorTerms hubbard_bloch_terms(const HubbardSpec& spec) {
  check_sites(spec.sites);
  const int L = spec.sites;
  const auto basis = bloch_basis(L);
  std::vector<int> mode_of(L);
  for (int m = 0; m < L; ++m) mode_of[basis.momentum_of_mode[m]] = m;

  OperatorTerms h;
  for (int m = 0; m < L; ++m)
    h.add(basis.energy_of_mode[m], {{m, true}, {m, false}});

  if (spec.u != 0.0) {
    const double theta = 2.0 * std::numbers::pi / L;
    for (int k1 = 0; k1 < L; ++k1)
      for (int k2 = 0; k2 < L; ++k2)
        for (int k3 = 0; k3 < L; ++k3) {
          const int k4 = ((k1 - k2 + k3) % L + L) % L;
          const cplx coeff = spec.u / static_cast<double>(L) *
                             std::polar(1.0, theta * (k3 - k4));
          h.add(coeff, {{mode_of[k1], true},
                        {mode_of[k2], false},
                        {mode_of[k3], true},
                        {mode_of[k4], false}});
        }
  }
  return h;
}

double block_coupling_r() {
  const double t = 2.0 * std::numbers::pi / 5.0;
  return 2.0 * (std::cos(t) - std::cos(2.0 * t)) / 5.0;
}

double block_occupation_d() {
  const double t = 2.0 * std::numbers::pi / 5.0;
  return 2.0 * (2.0 + std::cos(t) + 2.0 * std::cos(2.0 * t)) / 5.0;
}

std::vector<PairBlock> two_particle_blocks() {
  // ab holds the momentum-spacing-1 pair of each block, cd the spacing-2 pair.
  return {{{0, 1}, {2, 4}},
          {{3, 4}, {0, 2}},
          {{1, 2}, {0, 3}},
          {{0, 4}, {1, 3}},
          {{2, 3}, {1, 4}}};
}

std::pair<double, double> block_eigenvalues(double u, double eps_ab, double eps_cd) {
  const double d = block_occupation_d();
  const double r = block_coupling_r();
  const double tr = eps_ab + eps_cd + u;
  const double det = (eps_ab + d * u) * (eps_cd + (1.0 - d) * u) - r * r * u * u;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

std::vector<double> two_particle_spectrum_l5(double u) {
  const auto eps = bloch_energies(kBlockSites);
  std::vector<double> spectrum;
  spectrum.reserve(10);
  for (const auto& block : two_particle_blocks()) {
    const double eps_ab = eps[block.ab[0]] + eps[block.ab[1]];
    const double eps_cd = eps[block.cd[0]] + eps[block.cd[1]];
    const auto [lo, hi] = block_eigenvalues(u, eps_ab, eps_cd);
    spectrum.push_back(lo);
    spectrum.push_back(hi);
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

}  // namespace wfield
