// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wfield {

namespace {
void validate(const std::vector<double>& ws) {
  if (ws.empty()) throw std::invalid_argument("WeightVector: no modes");
  if (ws.size() > 20) throw std::invalid_argument("WeightVector: too many modes");
  for (std::size_t m = 0; m < ws.size(); ++m) {
    if (!(ws[m] > 0.0) || !(ws[m] < 1.0))
      throw std::invalid_argument("WeightVector: w[" + std::to_string(m) +
                                  "] = " + std::to_string(ws[m]) + " outside (0,1)");
  }
}
}  // namespace

bool WeightVector::any_above_half() const {
  return std::any_of(ws.begin(), ws.end(), [](double w) { return w > 0.5; });
}

std::vector<double> WeightVector::mu() const {
  std::vector<double> m(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) m[i] = ws[i] / (1.0 - ws[i]);
  return m;
}

WeightVector make_weights(std::vector<double> ws) {
  validate(ws);
  return WeightVector{std::move(ws)};
}

WeightVector default_weights(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("default_weights: n_modes < 1");
  std::vector<double> ws(static_cast<std::size_t>(n_modes));
  for (int m = 0; m < n_modes; ++m)
    ws[static_cast<std::size_t>(m)] = 0.5 - 0.5 * double(m) / double(n_modes);
  return make_weights(std::move(ws));
}

WeightVector perturbed(const WeightVector& w, double delta) {
  std::vector<double> ws = w.ws;
  for (double& x : ws) x += delta;
  return make_weights(std::move(ws));
}

double many_mode_weight(const WeightVector& w, fock_index pattern) {
  const int L = w.n_modes();
  if (pattern >> L) throw std::invalid_argument("many_mode_weight: pattern exceeds mode count");
  double p = 1.0;
  for (int m = 0; m < L; ++m) {
    const double wm = w.ws[static_cast<std::size_t>(m)];
    p *= (pattern & (fock_index{1} << m)) ? wm : 1.0 - wm;
  }
  return p;
}

double dfactor(const WeightVector& w) {
  double d = 1.0;
  for (double wm : w.ws) d *= 1.0 - wm;
  return d;
}

namespace {
OrderingMap rank_patterns(const WeightVector& w, std::vector<fock_index> patterns, int sector) {
  std::vector<double> weight(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) weight[i] = many_mode_weight(w, patterns[i]);

  std::vector<std::size_t> order(patterns.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (weight[a] != weight[b]) return weight[a] > weight[b];
    return patterns[a] < patterns[b];
  });

  for (std::size_t r = 1; r < order.size(); ++r) {
    const double hi = weight[order[r - 1]];
    const double lo = weight[order[r]];
    if (hi - lo <= kWeightTieTol) {
      const int L = w.n_modes();
      throw std::runtime_error(
          "weight ordering tie: patterns " + pattern_string(patterns[order[r - 1]], L) + " and " +
          pattern_string(patterns[order[r]], L) + " carry many-mode weights within 1e-12 (" +
          std::to_string(hi) + " vs " + std::to_string(lo) + ")");
    }
  }

  OrderingMap map;
  map.n_modes = w.n_modes();
  map.sector = sector;
  map.by_rank.resize(order.size());
  map.rank_of.assign(std::size_t{1} << w.n_modes(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) {
    map.by_rank[r] = patterns[order[r]];
    map.rank_of[patterns[order[r]]] = static_cast<int>(r) + 1;
  }
  return map;
}
}  // namespace

OrderingMap ordering(const WeightVector& w) {
  const std::size_t n = std::size_t{1} << w.n_modes();
  std::vector<fock_index> patterns(n);
  std::iota(patterns.begin(), patterns.end(), fock_index{0});
  return rank_patterns(w, std::move(patterns), -1);
}

OrderingMap sector_ordering(const WeightVector& w, int sector) {
  if (sector < 0 || sector > w.n_modes())
    throw std::invalid_argument("sector_ordering: sector outside 0..L");
  std::vector<fock_index> patterns;
  const fock_index n = fock_index{1} << w.n_modes();
  for (fock_index p = 0; p < n; ++p) {
    if (__builtin_popcount(p) == sector) patterns.push_back(p);
  }
  return rank_patterns(w, std::move(patterns), sector);
}

bool same_ordering(const WeightVector& a, const WeightVector& b) {
  if (a.n_modes() != b.n_modes()) return false;
  return ordering(a).by_rank == ordering(b).by_rank;
}

bool same_sector_ordering(const WeightVector& a, const WeightVector& b, int sector) {
  if (a.n_modes() != b.n_modes()) return false;
  return sector_ordering(a, sector).by_rank == sector_ordering(b, sector).by_rank;
}

}  // namespace wfield
