// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wfield::oracle {

namespace {

void check_hermitian(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n)
      throw std::invalid_argument("oracle: matrix is not square");
    for (int j = 0; j <= i; ++j)
      if (std::abs(a[i][j] - std::conj(a[j][i])) > 1e-10)
        throw std::invalid_argument("oracle: matrix is not Hermitian");
  }
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i][j]);
  return std::sqrt(s);
}

}  // namespace

Eigensystem hermitian_eigensystem(Matrix a, int max_sweeps) {
  check_hermitian(a);
  const int n = static_cast<int>(a.size());
  Matrix v(n, std::vector<cplx>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][i].real()));

  bool converged = (n < 2);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a[p][q];
        const double b = std::abs(apq);
        if (b <= 1e-300) continue;
        const cplx phase = apq / b;
        const double alpha = a[p][p].real();
        const double gamma = a[q][q].real();
        const double theta = (gamma - alpha) / (2.0 * b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U is the identity outside {p,q}; inside,
        // U_pp = c, U_pq = s e^{i phi}, U_qp = -s e^{-i phi}, U_qq = c,
        // which zeroes (U+ A U)_pq for the t above.
        const cplx up = s * std::conj(phase);
        const cplx uq = s * phase;

        a[p][p] = alpha - t * b;
        a[q][q] = gamma + t * b;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const cplx arp = a[r][p];
          const cplx arq = a[r][q];
          a[r][p] = c * arp - up * arq;
          a[r][q] = uq * arp + c * arq;
          a[p][r] = std::conj(a[r][p]);
          a[q][r] = std::conj(a[r][q]);
        }
        for (int r = 0; r < n; ++r) {
          const cplx vrp = v[r][p];
          const cplx vrq = v[r][q];
          v[r][p] = c * vrp - up * vrq;
          v[r][q] = uq * vrp + c * vrq;
        }
      }
    converged = off_diagonal_norm(a) < 1e-13 * n * scale;
  }
  if (!converged) throw std::runtime_error("oracle: Jacobi sweep limit reached");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int i, int j) { return a[i][i].real() < a[j][j].real(); });

  Eigensystem out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<cplx>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    out.values[j] = a[order[j]][order[j]].real();
    for (int r = 0; r < n; ++r) out.vectors[r][j] = v[r][order[j]];
  }
  return out;
}

Matrix dense_matrix(const OperatorTerms& h, const FockSpace& space) {
  const fock_index dim = space.dim();
  Matrix a(dim, std::vector<cplx>(dim, 0.0));
  for (fock_index col = 0; col < dim; ++col) {
    const auto out = apply_terms(h, basis_state(space, col));
    for (fock_index row = 0; row < dim; ++row) a[row][col] = out.amp[row];
  }
  return a;
}

std::vector<fock_index> sector_patterns(int modes, int n) {
  std::vector<fock_index> pats;
  const fock_index dim = fock_index{1} << modes;
  for (fock_index p = 0; p < dim; ++p)
    if (std::popcount(p) == n) pats.push_back(p);
  return pats;
}

Matrix sector_matrix(const OperatorTerms& h, int modes, int n) {
  const auto pats = sector_patterns(modes, n);
  std::vector<int> local(std::size_t{1} << modes, -1);
  for (int j = 0; j < static_cast<int>(pats.size()); ++j) local[pats[j]] = j;

  const FockSpace space = plain_space(modes);
  Matrix a(pats.size(), std::vector<cplx>(pats.size(), 0.0));
  for (std::size_t col = 0; col < pats.size(); ++col) {
    const auto out = apply_terms(h, basis_state(space, pats[col]));
    for (fock_index row = 0; row < space.dim(); ++row) {
      if (std::abs(out.amp[row]) < 1e-14) continue;
      if (local[row] < 0)
        throw std::invalid_argument("oracle: operator does not conserve particle number");
      a[local[row]][col] = out.amp[row];
    }
  }
  for (std::size_t i = 0; i < pats.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const cplx m = (a[i][j] + std::conj(a[j][i])) / 2.0;
      a[i][j] = m;
      a[j][i] = std::conj(m);
    }
  return a;
}

std::vector<double> sector_spectrum(const OperatorTerms& h, int modes, int n) {
  return hermitian_eigensystem(sector_matrix(h, modes, n)).values;
}

std::vector<std::vector<double>> all_sector_spectra(const OperatorTerms& h, int modes) {
  std::vector<std::vector<double>> spectra(modes + 1);
  for (int n = 0; n <= modes; ++n) spectra[n] = sector_spectrum(h, modes, n);
  return spectra;
}

double ensemble_minimum(const WeightVector& w,
                        const std::vector<std::vector<double>>& spectra) {
  const int modes = w.n_modes();
  if (static_cast<int>(spectra.size()) != modes + 1)
    throw std::invalid_argument("oracle: need one spectrum per particle sector");
  double energy = 0.0;
  for (int n = 0; n <= modes; ++n) {
    const auto pats = sector_patterns(modes, n);
    std::vector<double> wn;
    wn.reserve(pats.size());
    for (const auto p : pats) wn.push_back(many_mode_weight(w, p));
    std::sort(wn.begin(), wn.end(), std::greater<>());
    if (spectra[n].size() != wn.size())
      throw std::invalid_argument("oracle: spectrum size does not match sector");
    for (std::size_t i = 0; i < wn.size(); ++i) energy += wn[i] * spectra[n][i];
  }
  return energy;
}

double sector_energy_ranked(const WeightVector& w, const OrderingMap& order,
                            const std::vector<double>& spectrum) {
  if (order.n_modes != w.n_modes())
    throw std::invalid_argument("oracle: ordering does not match the weights");
  if (spectrum.size() < order.by_rank.size())
    throw std::invalid_argument("oracle: spectrum smaller than the ordering");
  double energy = 0.0;
  for (const auto p : order.by_rank) {
    double mu_n = 1.0;
    for (int m = 0; m < w.n_modes(); ++m)
      if (p >> m & 1u) mu_n *= w.mu(m);
    energy += mu_n * spectrum[order.rank(p) - 1];
  }
  return energy;
}

double sector_energy_ideal(const WeightVector& w, int n,
                           const std::vector<double>& spectrum) {
  return sector_energy_ranked(w, sector_ordering(w, n), spectrum);
}

double derivative_extraction_noninteracting(const std::vector<double>& omegas,
                                            const WeightVector& w, fock_index pattern) {
  if (static_cast<int>(omegas.size()) != w.n_modes())
    throw std::invalid_argument("oracle: omega count does not match the weights");
  if (pattern >> w.n_modes())
    throw std::invalid_argument("oracle: pattern has bits outside the modes");
  const double h = 1e-5;
  double e = 0.0;
  for (int m = 0; m < w.n_modes(); ++m) {
    if (!(pattern >> m & 1u)) continue;
    const auto free_energy = [&omegas](const WeightVector& wv) {
      double s = 0.0;
      for (int k = 0; k < wv.n_modes(); ++k) s += wv.ws[k] * omegas[k];
      return s;
    };
    std::vector<double> up = w.ws, dn = w.ws;
    up[m] += h;
    dn[m] -= h;
    e += (free_energy(make_weights(up)) - free_energy(make_weights(dn))) / (2.0 * h);
  }
  return e;
}

}  // namespace wfield::oracle
