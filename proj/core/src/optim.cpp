// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/optim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wfield {

namespace {

// Portable uniform in [0, 1); uniform_real_distribution is not pinned down
// by the standard and we want bit-stable runs.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Vertex {
  std::vector<double> x;
  double value;
};

}  // namespace

OptimizationResult nelder_mead(const Objective& f, std::vector<double> x0,
                               const OptimizerConfig& config) {
  if (config.tolerance <= 0.0) throw std::invalid_argument("optim: tolerance must be positive");
  if (config.initial_step == 0.0) throw std::invalid_argument("optim: initial_step must be nonzero");

  OptimizationResult result;
  const int n = static_cast<int>(x0.size());
  result.x = x0;
  result.value = f(x0);
  result.evaluations = 1;
  if (n == 0) {
    result.converged = true;
    return result;
  }

  std::mt19937_64 rng(config.seed);
  const int runs = 1 + std::max(0, config.restarts);

  for (int run = 0; run < runs && result.iterations < config.max_iterations; ++run) {
    std::vector<double> steps(n, config.initial_step);
    if (run > 0)
      for (auto& s : steps) {
        s *= 0.5 + uniform01(rng);
        if (uniform01(rng) < 0.5) s = -s;
      }

    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({result.x, result.value});
    for (int i = 0; i < n; ++i) {
      auto x = result.x;
      x[i] += steps[i];
      simplex.push_back({x, f(x)});
      ++result.evaluations;
    }

    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.value < b.value; };
    bool run_converged = false;

    while (result.iterations < config.max_iterations) {
      std::stable_sort(simplex.begin(), simplex.end(), by_value);
      if (simplex.back().value - simplex.front().value <= config.tolerance) {
        run_converged = true;
        break;
      }
      ++result.iterations;

      std::vector<double> centroid(n, 0.0);
      for (int v = 0; v < n; ++v)
        for (int i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / n;
      const Vertex& worst = simplex[n];

      const auto along = [&](double coef) {
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) x[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
        return x;
      };

      auto reflected = along(1.0);
      const double fr = f(reflected);
      ++result.evaluations;

      if (fr < simplex[0].value) {
        auto expanded = along(2.0);
        const double fe = f(expanded);
        ++result.evaluations;
        simplex[n] = fe < fr ? Vertex{std::move(expanded), fe}
                             : Vertex{std::move(reflected), fr};
      } else if (fr < simplex[n - 1].value) {
        simplex[n] = {std::move(reflected), fr};
      } else {
        const bool outside = fr < worst.value;
        auto contracted = outside ? along(0.5) : along(-0.5);
        const double fc = f(contracted);
        ++result.evaluations;
        if (fc < (outside ? fr : worst.value)) {
          simplex[n] = {std::move(contracted), fc};
        } else {
          for (int v = 1; v <= n; ++v) {
            for (int i = 0; i < n; ++i)
              simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
            simplex[v].value = f(simplex[v].x);
            ++result.evaluations;
          }
        }
      }

      const auto& best = *std::min_element(simplex.begin(), simplex.end(), by_value);
      result.history.push_back(std::min(result.value, best.value));
    }

    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.front().value < result.value) {
      result.value = simplex.front().value;
      result.x = simplex.front().x;
      result.converged = run_converged;
    } else if (run_converged && simplex.front().value == result.value) {
      result.converged = true;
    }
  }
  return result;
}

std::vector<double> greedy_axis_start(const Objective& f, std::vector<double> x0,
                                      double step, int rounds) {
  double best = f(x0);
  for (int round = 0; round < rounds; ++round) {
    int best_axis = -1;
    double best_delta = 0.0;
    double best_value = best;
    for (int i = 0; i < static_cast<int>(x0.size()); ++i)
      for (const double delta : {step, -step}) {
        auto x = x0;
        x[i] += delta;
        const double v = f(x);
        if (v < best_value - 1e-12) {
          best_value = v;
          best_axis = i;
          best_delta = delta;
        }
      }
    if (best_axis < 0) break;
    x0[best_axis] += best_delta;
    best = best_value;
  }
  return x0;
}

}  // namespace wfield
