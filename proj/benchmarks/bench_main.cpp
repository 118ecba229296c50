// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: compiled operator application, ansatz
// circuits, ensemble energies, and the dense-diagonalization oracle.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wfield/fock.hpp"
#include "wfield/model.hpp"
#include "wfield/optim.hpp"
#include "wfield/oracle.hpp"
#include "wfield/ucc.hpp"
#include "wfield/weights.hpp"
#include "wfield/wfield_state.hpp"

namespace {

std::vector<double> random_theta(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::vector<double> theta(n);
  for (auto& t : theta) t = dist(rng);
  return theta;
}

void BM_apply_compiled(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const auto space = wfield::doubled_space(sites);
  const auto h =
      wfield::compile_operator(wfield::hubbard_bloch_terms({sites, 2.0}), space.total_modes());
  const auto psi = wfield::build_free_wfield(wfield::default_weights(sites));
  for (auto _ : state) {
    auto out = wfield::apply_compiled(h, psi);
    benchmark::DoNotOptimize(out.amp.data());
  }
}
BENCHMARK(BM_apply_compiled)->Arg(4)->Arg(5)->Arg(6);

void BM_ansatz_apply(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const auto space = wfield::doubled_space(sites);
  const auto shape = wfield::uccsd_shape(sites, 4);
  const auto ansatz = wfield::compile_ansatz(shape, space);
  const auto theta = random_theta(shape.n_params(), 7);
  const auto psi0 = wfield::build_free_wfield(wfield::default_weights(sites));
  for (auto _ : state) {
    auto psi = psi0;
    wfield::apply_compiled_ansatz(ansatz, theta, psi);
    benchmark::DoNotOptimize(psi.amp.data());
  }
}
BENCHMARK(BM_ansatz_apply)->Arg(4)->Arg(5);

void BM_ensemble_energy(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const auto space = wfield::doubled_space(sites);
  const auto h =
      wfield::compile_operator(wfield::hubbard_bloch_terms({sites, 2.0}), space.total_modes());
  const auto shape = wfield::uccsd_shape(sites, 4);
  const auto ansatz = wfield::compile_ansatz(shape, space);
  const auto theta = random_theta(shape.n_params(), 11);
  const auto psi0 = wfield::build_free_wfield(wfield::default_weights(sites));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wfield::ensemble_energy(h, ansatz, theta, psi0));
  }
}
BENCHMARK(BM_ensemble_energy)->Arg(4)->Arg(5);

void BM_sector_spectra(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const auto terms = wfield::hubbard_bloch_terms({sites, 2.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(wfield::oracle::all_sector_spectra(terms, sites));
  }
}
BENCHMARK(BM_sector_spectra)->Arg(5)->Arg(6)->Arg(8);

void BM_nelder_mead_rosenbrock(benchmark::State& state) {
  const auto rosenbrock = [](const std::vector<double>& x) {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      const double b = 1.0 - x[i];
      f += 100.0 * a * a + b * b;
    }
    return f;
  };
  wfield::OptimizerConfig config;
  config.tolerance = 1e-8;
  config.restarts = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wfield::nelder_mead(rosenbrock, std::vector<double>(4, -1.0), config));
  }
}
BENCHMARK(BM_nelder_mead_rosenbrock);

}  // namespace

BENCHMARK_MAIN();
