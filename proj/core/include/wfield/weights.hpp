// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_WEIGHTS_HPP
#define WFIELD_WEIGHTS_HPP

#include <vector>

#include "wfield/fock.hpp"

namespace wfield {

// Collision tolerance when ranking many-mode weights.
inline constexpr double kWeightTieTol = 1e-12;

// Single-mode ensemble weights w_m in (0,1), one per physical mode.
// Values above 1/2 are legal but flagged: the heaviest many-mode patterns
// then no longer concentrate on small occupations.
struct WeightVector {
  std::vector<double> ws;

  int n_modes() const { return static_cast<int>(ws.size()); }
  bool any_above_half() const;

  // Occupation odds mu_m = w_m / (1 - w_m).
  std::vector<double> mu() const;
  double mu(int mode) const { return ws[static_cast<std::size_t>(mode)] /
                                     (1.0 - ws[static_cast<std::size_t>(mode)]); }
};

WeightVector make_weights(std::vector<double> ws);

// Default experiment choice: w_m = 1/2 - m/(2L), decreasing from 1/2.
WeightVector default_weights(int n_modes);

// Elementwise w + delta, revalidated.
WeightVector perturbed(const WeightVector& w, double delta);

// Product weight of one occupation pattern: prod w^n (1-w)^(1-n).
double many_mode_weight(const WeightVector& w, fock_index pattern);

// D(w) = prod (1 - w_m), the weight of the empty pattern.
double dfactor(const WeightVector& w);

// Rank map over occupation patterns: rank 1 = heaviest many-mode weight.
// Restricted maps cover only the patterns of one particle sector.
struct OrderingMap {
  int n_modes = 0;
  int sector = -1;                      // -1: all 2^L patterns
  std::vector<fock_index> by_rank;      // pattern at rank r (0-based storage)
  std::vector<int> rank_of;             // pattern -> 1-based rank, 0 if outside

  int rank(fock_index pattern) const { return rank_of[pattern]; }
  bool operator==(const OrderingMap&) const = default;
};

// Ranks all 2^L patterns. Throws when two many-mode weights collide within
// kWeightTieTol; the message names both patterns.
OrderingMap ordering(const WeightVector& w);

// Ranks only the patterns with popcount == sector.
OrderingMap sector_ordering(const WeightVector& w, int sector);

bool same_ordering(const WeightVector& a, const WeightVector& b);
bool same_sector_ordering(const WeightVector& a, const WeightVector& b, int sector);

}  // namespace wfield

#endif  // WFIELD_WEIGHTS_HPP
