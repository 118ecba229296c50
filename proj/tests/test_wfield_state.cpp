// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "support/expm.hpp"
#include "wfield/wfield_state.hpp"

using namespace wfield;

namespace {

WeightVector random_weights(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  std::vector<double> ws(n);
  for (auto& w : ws) w = dist(rng);
  return make_weights(std::move(ws));
}

}  // namespace

TEST_SUITE("wfield_state") {

TEST_CASE("free field amplitudes, two modes") {
  // reference values from a dense pair-creation product
  const StateVector psi = build_free_wfield(make_weights({0.5, 0.4}));
  REQUIRE(psi.amp.size() == 16);
  CHECK(psi.amp[0].real() == doctest::Approx(0.5477225575051662).epsilon(1e-14));
  CHECK(psi.amp[0b0101].real() == doctest::Approx(0.5477225575051662).epsilon(1e-14));
  CHECK(psi.amp[0b1010].real() == doctest::Approx(0.447213595499958).epsilon(1e-14));
  CHECK(psi.amp[0b1111].real() == doctest::Approx(-0.447213595499958).epsilon(1e-14));
  for (std::size_t b = 0; b < 16; ++b) {
    if (b == 0 || b == 0b0101 || b == 0b1010 || b == 0b1111) continue;
    CHECK(std::abs(psi.amp[b]) == 0.0);
  }
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("only pair-matched patterns carry amplitude") {
  const StateVector psi = build_free_wfield(make_weights({0.3, 0.7, 0.45}));
  for (std::size_t b = 0; b < psi.amp.size(); ++b) {
    const fock_index phys = static_cast<fock_index>(b) & 0b111;
    const fock_index tilde = static_cast<fock_index>(b) >> 3;
    if (phys != tilde) CHECK(std::abs(psi.amp[b]) == 0.0);
  }
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("pair reordering signs at equal weights") {
  // all w = 1/2: every pair pattern has amplitude 2^(-3/2), sign (-1)^(k(k-1)/2)
  const StateVector psi = build_free_wfield(make_weights({0.5, 0.5, 0.5}));
  const double a = std::pow(0.5, 1.5);
  CHECK(psi.amp[0].real() == doctest::Approx(a));
  CHECK(psi.amp[0b001001].real() == doctest::Approx(a));    // one pair
  CHECK(psi.amp[0b011011].real() == doctest::Approx(-a));   // two pairs
  CHECK(psi.amp[0b111111].real() == doctest::Approx(-a));   // three pairs
}

TEST_CASE("pair rotations reproduce the product construction") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 12; ++trial) {
    const int L = 2 + trial % 4;
    const WeightVector w = random_weights(L, rng);
    const StateVector direct = build_free_wfield(w);
    const StateVector rotated = apply_pair_rotations(w, vacuum_state(doubled_space(L)));
    REQUIRE(direct.amp.size() == rotated.amp.size());
    for (std::size_t b = 0; b < direct.amp.size(); ++b)
      CHECK(std::abs(direct.amp[b] - rotated.amp[b]) < 1e-13);

    const StateVector back = apply_pair_rotations(w, rotated, true);
    CHECK(std::abs(back.amp[0] - 1.0) < 1e-13);
    CHECK(back.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("pair rotations match the dense exponential") {
  std::mt19937_64 rng(7);
  for (const int L : {2, 3}) {
    const WeightVector w = random_weights(L, rng);
    const auto theta = pair_angles(w);
    StateVector reference = vacuum_state(doubled_space(L));
    for (int m = 0; m < L; ++m) {
      OperatorTerms generator;
      generator.add(theta[m], {{m, true}, {L + m, true}});
      generator.add(-theta[m], {{L + m, false}, {m, false}});
      reference = testsupport::expm_apply(generator, reference);
    }
    const StateVector fast = build_free_wfield(w);
    for (std::size_t b = 0; b < fast.amp.size(); ++b)
      CHECK(std::abs(fast.amp[b] - reference.amp[b]) < 1e-13);
  }
}

TEST_CASE("fourier projection equals the direct projection") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (const int L : {2, 3, 4}) {
    StateVector psi(doubled_space(L));
    for (auto& a : psi.amp) a = cplx(dist(rng), dist(rng));
    psi.normalize();
    for (int n = 0; n <= L; ++n) {
      const StateVector direct = project_physical_number(psi, n);
      const StateVector fourier = project_number_fourier(psi, n);
      const StateVector coarse = project_number_fourier(psi, n, L + 1);
      for (std::size_t b = 0; b < psi.amp.size(); ++b) {
        CHECK(std::abs(direct.amp[b] - fourier.amp[b]) < 1e-12);
        CHECK(std::abs(direct.amp[b] - coarse.amp[b]) < 1e-12);
      }
    }
  }
}

TEST_CASE("fourier projection rejects aliasing grids") {
  const StateVector psi = vacuum_state(doubled_space(3));
  CHECK_THROWS(project_number_fourier(psi, 2, 3));   // Q < L + 1
  CHECK_THROWS(project_number_fourier(psi, -1, 7));
  CHECK_NOTHROW(project_number_fourier(psi, 3, 4));
}

TEST_CASE("mixing angles") {
  const auto theta = pair_angles(make_weights({0.5, 0.19}));
  CHECK(std::cos(theta[0]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(std::sin(theta[1]) == doctest::Approx(std::sqrt(0.19)).epsilon(1e-14));
}

}  // TEST_SUITE
