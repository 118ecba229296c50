// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef WFIELD_OPTIM_HPP
#define WFIELD_OPTIM_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace wfield {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimizerConfig {
  double tolerance = 1e-5;     // simplex value spread that counts as converged
  long max_iterations = 20000; // total across restarts
  double initial_step = 0.1;
  int restarts = 2;            // extra runs from the perturbed best point
  std::uint64_t seed = 0;
};

struct OptimizationResult {
  std::vector<double> x;
  double value = 0.0;
  long iterations = 0;
  long evaluations = 0;
  bool converged = false;      // the reported point came from a converged run
  std::vector<double> history; // best value after each iteration
};

// Nelder-Mead with reflection 1, expansion 2, contraction 1/2, shrink 1/2.
// The first simplex is x0 plus initial_step along each axis; restarts rebuild
// it around the best point with deterministically jittered steps. The best
// vertex is never discarded.
OptimizationResult nelder_mead(const Objective& f, std::vector<double> x0,
                               const OptimizerConfig& config);

// Coordinate seeding for objectives with known good axis points: repeatedly
// try x +- step along every axis and keep the best strict improvement, up to
// `rounds` accepted moves. Returns the improved point.
std::vector<double> greedy_axis_start(const Objective& f, std::vector<double> x0,
                                      double step, int rounds);

}  // namespace wfield

#endif  // WFIELD_OPTIM_HPP
