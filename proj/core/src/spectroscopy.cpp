// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/spectroscopy.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "wfield/wfield_state.hpp"

namespace wfield {

namespace {

double checked_real(const cplx& e, const char* who) {
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real())))
    throw std::runtime_error(std::string(who) + ": expectation has a large imaginary part");
  return e.real();
}

}  // namespace

ExtractedState extract_eigenstate(const StateVector& psi, fock_index pattern) {
  const int L = psi.space.n_phys;
  if (psi.space.n_tilde != L)
    throw std::invalid_argument("spectroscopy: state is not in a doubled space");
  if (pattern >> L)
    throw std::invalid_argument("spectroscopy: pattern has bits outside the tilde modes");

  ExtractedState out;
  out.state.space = plain_space(L);
  out.state.amp.assign(fock_index{1} << L, 0.0);
  const fock_index high = pattern << L;
  for (fock_index b = 0; b < out.state.amp.size(); ++b) {
    out.state.amp[b] = psi.amp[b | high];
    out.weight += std::norm(out.state.amp[b]);
  }
  if (out.weight < 1e-10)
    throw std::runtime_error("spectroscopy: tilde pattern carries no weight");
  const double inv = 1.0 / std::sqrt(out.weight);
  for (auto& a : out.state.amp) a *= inv;
  return out;
}

double state_energy(const CompiledOperator& h, const StateVector& psi) {
  return checked_real(expectation(h, psi), "spectroscopy");
}

double sector_ensemble_energy(const CompiledOperator& h, const StateVector& psi,
                              int n_particles, const WeightVector& w, int q) {
  if (w.n_modes() != psi.space.n_phys)
    throw std::invalid_argument("spectroscopy: weight count does not match the space");
  const StateVector projected = q == 0
                                    ? project_physical_number(psi, n_particles)
                                    : project_number_fourier(psi, n_particles, q);
  return checked_real(expectation(h, projected), "spectroscopy") / dfactor(w);
}

double extract_eigenenergy(const SectorEvaluator& evaluate, const WeightVector& w,
                           const WeightVector& wprime, const std::vector<int>& occupied) {
  const int L = w.n_modes();
  if (wprime.n_modes() != L)
    throw std::invalid_argument("spectroscopy: weight vectors differ in size");
  const int n = static_cast<int>(occupied.size());
  if (n == 0) return evaluate(w);

  fock_index seen = 0;
  double denom = 1.0;
  for (const int m : occupied) {
    if (m < 0 || m >= L)
      throw std::invalid_argument("spectroscopy: occupied mode out of range");
    if (seen >> m & 1u)
      throw std::invalid_argument("spectroscopy: repeated occupied mode");
    seen |= fock_index{1} << m;
    const double d = w.mu(m) - wprime.mu(m);
    if (std::abs(d) < 1e-12)
      throw std::invalid_argument("spectroscopy: degenerate mu pair for a perturbed mode");
    denom *= d;
  }
  if (!same_sector_ordering(w, wprime, n))
    throw std::runtime_error(
        "spectroscopy: w and w' order the " + std::to_string(n) +
        "-particle patterns differently; extraction would mix incompatible rankings");

  double sum = 0.0;
  for (fock_index mask = 0; mask < (fock_index{1} << n); ++mask) {
    std::vector<double> ws = w.ws;
    for (int idx = 0; idx < n; ++idx)
      if (mask >> idx & 1u) ws[occupied[idx]] = wprime.ws[occupied[idx]];
    const double sign = std::popcount(mask) % 2 ? -1.0 : 1.0;
    sum += sign * evaluate(make_weights(ws));
  }
  return sum / denom;
}

double extract_eigenenergy(const SectorEvaluator& evaluate, const WeightVector& w,
                           fock_index pattern, double delta) {
  if (pattern >> w.n_modes())
    throw std::invalid_argument("spectroscopy: pattern has bits outside the modes");
  if (delta == 0.0) throw std::invalid_argument("spectroscopy: delta must be nonzero");
  std::vector<int> occupied;
  for (int m = 0; m < w.n_modes(); ++m)
    if (pattern >> m & 1u) occupied.push_back(m);
  return extract_eigenenergy(evaluate, w, perturbed(w, delta), occupied);
}

double eigenenergy_from_derivatives(const std::function<double(const WeightVector&)>& energy,
                                    const WeightVector& w, fock_index pattern, double h) {
  const int L = w.n_modes();
  if (pattern >> L)
    throw std::invalid_argument("spectroscopy: pattern has bits outside the modes");
  if (h <= 0.0) throw std::invalid_argument("spectroscopy: step must be positive");
  double e = 0.0;
  for (int m = 0; m < L; ++m) {
    if (!(pattern >> m & 1u)) continue;
    std::vector<double> up = w.ws, dn = w.ws;
    up[m] += h;
    dn[m] -= h;
    e += (energy(make_weights(up)) - energy(make_weights(dn))) / (2.0 * h);
  }
  return e;
}

GapResult particle_gaps(const std::vector<double>& ground_by_sector, int n) {
  const int top = static_cast<int>(ground_by_sector.size()) - 1;
  if (n < 1 || n > top - 1)
    throw std::invalid_argument("spectroscopy: gaps need both neighbour sectors");
  GapResult g;
  g.minus = ground_by_sector[n - 1] - ground_by_sector[n];
  g.plus = ground_by_sector[n] - ground_by_sector[n + 1];
  g.gap = g.minus - g.plus;
  return g;
}

GapResult gaps(const std::function<double(const WeightVector&, int)>& evaluate,
               const WeightVector& w, const WeightVector& wprime, int n) {
  if (n < 1 || n > w.n_modes() - 1)
    throw std::invalid_argument("spectroscopy: gaps need both neighbour sectors");
  std::vector<double> ground(3);
  for (int s = n - 1; s <= n + 1; ++s) {
    std::vector<int> occupied;
    if (s > 0) {
      const fock_index pattern = sector_ordering(w, s).by_rank.front();
      for (int m = 0; m < w.n_modes(); ++m)
        if (pattern >> m & 1u) occupied.push_back(m);
    }
    const auto sector_eval = [&evaluate, s](const WeightVector& wv) {
      return evaluate(wv, s);
    };
    ground[s - (n - 1)] = extract_eigenenergy(sector_eval, w, wprime, occupied);
  }
  GapResult g;
  g.minus = ground[0] - ground[1];
  g.plus = ground[1] - ground[2];
  g.gap = g.minus - g.plus;
  return g;
}

LinearityReport linearity_scan(const std::function<double(const WeightVector&)>& energy,
                               const WeightVector& w, int mode,
                               const std::vector<double>& grid) {
  if (mode < 0 || mode >= w.n_modes())
    throw std::invalid_argument("spectroscopy: mode out of range");
  const int points = static_cast<int>(grid.size());
  if (points < 3) throw std::invalid_argument("spectroscopy: need at least 3 grid points");

  LinearityReport report;
  report.mode = mode;
  std::vector<OrderingMap> last;
  for (int i = 0; i < points; ++i) {
    std::vector<double> ws = w.ws;
    ws[mode] = grid[i];
    const WeightVector wi = make_weights(ws);
    std::vector<OrderingMap> order;
    order.reserve(w.n_modes() + 1);
    for (int n = 0; n <= w.n_modes(); ++n) order.push_back(sector_ordering(wi, n));
    int seg = report.segment.empty() ? 0 : report.segment.back();
    if (!report.segment.empty() && order != last) ++seg;
    last = std::move(order);
    report.ws.push_back(grid[i]);
    report.energies.push_back(energy(wi));
    report.segment.push_back(seg);
  }

  for (int seg = report.segment.front(); seg <= report.segment.back(); ++seg) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int i = 0; i < points; ++i) {
      if (report.segment[i] != seg) continue;
      sx += report.ws[i];
      sy += report.energies[i];
      sxx += report.ws[i] * report.ws[i];
      sxy += report.ws[i] * report.energies[i];
      ++count;
    }
    if (count < 3) continue;
    const double var = sxx - sx * sx / count;
    const double slope = var > 0.0 ? (sxy - sx * sy / count) / var : 0.0;
    const double intercept = (sy - slope * sx) / count;
    for (int i = 0; i < points; ++i) {
      if (report.segment[i] != seg) continue;
      const double fit = intercept + slope * report.ws[i];
      report.max_residual = std::max(report.max_residual,
                                     std::abs(report.energies[i] - fit));
    }
  }
  return report;
}

}  // namespace wfield
