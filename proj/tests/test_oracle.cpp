// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "wfield/model.hpp"
#include "wfield/oracle.hpp"

using namespace wfield;
using oracle::Matrix;

TEST_SUITE("oracle") {

TEST_CASE("jacobi, two by two") {
  Matrix a = {{cplx(2.0, 0.0), cplx(0.0, 1.0)}, {cplx(0.0, -1.0), cplx(2.0, 0.0)}};
  const auto eig = oracle::hermitian_eigensystem(a);
  REQUIRE(eig.values.size() == 2);
  CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("jacobi residuals and orthonormality") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 8;
  Matrix b(n, std::vector<cplx>(n));
  for (auto& row : b)
    for (auto& x : row) x = cplx(dist(rng), dist(rng));
  Matrix a(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = b[i][j] + std::conj(b[j][i]);

  const auto eig = oracle::hermitian_eigensystem(a);
  for (int j = 0; j + 1 < n; ++j) CHECK(eig.values[j] <= eig.values[j + 1]);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      cplx av{0.0, 0.0};
      for (int k = 0; k < n; ++k) av += a[i][k] * eig.vectors[k][j];
      CHECK(std::abs(av - eig.values[j] * eig.vectors[i][j]) < 1e-9);
    }
    for (int k = 0; k <= j; ++k) {
      cplx dot{0.0, 0.0};
      for (int i = 0; i < n; ++i) dot += std::conj(eig.vectors[i][k]) * eig.vectors[i][j];
      CHECK(std::abs(dot - (k == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("jacobi rejects non-hermitian input") {
  Matrix a = {{cplx(0.0, 0.0), cplx(1.0, 0.0)}, {cplx(0.0, 0.0), cplx(0.0, 0.0)}};
  CHECK_THROWS(oracle::hermitian_eigensystem(a));
  Matrix ragged = {{cplx(0.0, 0.0)}, {cplx(0.0, 0.0), cplx(0.0, 0.0)}};
  CHECK_THROWS(oracle::hermitian_eigensystem(ragged));
}

TEST_CASE("sector patterns") {
  const auto pats = oracle::sector_patterns(5, 2);
  REQUIRE(pats.size() == 10);
  CHECK(pats.front() == 0b00011);
  CHECK(pats.back() == 0b11000);
  for (std::size_t i = 0; i + 1 < pats.size(); ++i) CHECK(pats[i] < pats[i + 1]);
  CHECK(oracle::sector_patterns(4, 0).size() == 1);
  CHECK(oracle::sector_patterns(4, 4).size() == 1);
}

TEST_CASE("sector matrix refuses leaking operators") {
  OperatorTerms pairs;
  pairs.add(1.0, {{0, true}, {1, true}});
  pairs.add(1.0, {{1, false}, {0, false}});
  CHECK_THROWS(oracle::sector_matrix(pairs, 3, 1));
}

TEST_CASE("four-site spectrum, frozen") {
  // reference: dense site-basis diagonalization (independent implementation)
  const std::vector<double> reference = {-1.23606797749979, -1.236067977499789,
                                         2.0,               2.0,
                                         3.23606797749979,  3.23606797749979};
  const auto spectrum = oracle::sector_spectrum(hubbard_site_terms({4, 2.0}), 4, 2);
  REQUIRE(spectrum.size() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(spectrum[i] == doctest::Approx(reference[i]).epsilon(1e-9));
}

TEST_CASE("ensemble minimum, frozen and optimal") {
  const WeightVector w = default_weights(3);
  const auto spectra = oracle::all_sector_spectra(hubbard_site_terms({3, 2.0}), 3);
  const double emin = oracle::ensemble_minimum(w, spectra);
  CHECK(emin == doctest::Approx(0.111111111111111).epsilon(1e-12));

  // any rank-respecting assignment is at least the minimum
  for (int n = 1; n <= 2; ++n) {
    auto shuffled = spectra;
    std::swap(shuffled[n][0], shuffled[n].back());
    CHECK(oracle::ensemble_minimum(w, shuffled) >= emin - 1e-12);
  }
  CHECK_THROWS(oracle::ensemble_minimum(w, {{0.0}}));
}

TEST_CASE("sector energies add up to the ensemble minimum") {
  const WeightVector w = make_weights({0.48, 0.37, 0.21});
  const auto spectra = oracle::all_sector_spectra(hubbard_site_terms({3, 1.3}), 3);
  double total = 0.0;
  for (int n = 0; n <= 3; ++n)
    total += dfactor(w) * oracle::sector_energy_ideal(w, n, spectra[n]);
  CHECK(total == doctest::Approx(oracle::ensemble_minimum(w, spectra)).epsilon(1e-12));
}

TEST_CASE("ranked sector energy is multilinear in the odds") {
  const WeightVector w = make_weights({0.45, 0.3, 0.2});
  const OrderingMap order = sector_ordering(w, 2);
  const std::vector<double> spectrum = {-1.7, 0.4, 2.9};
  const auto energy = [&](const WeightVector& wv) {
    return oracle::sector_energy_ranked(wv, order, spectrum);
  };
  // affine in each mu_m: E(mid) = (E(lo) + E(hi)) / 2 when mu is the midpoint
  for (int m = 0; m < 3; ++m) {
    auto lo = w.ws, hi = w.ws, mid = w.ws;
    lo[m] = 0.2;
    hi[m] = 0.6;
    const double mu_mid = (0.2 / 0.8 + 0.6 / 0.4) / 2.0;
    mid[m] = mu_mid / (1.0 + mu_mid);
    const double e_mid = energy(make_weights(mid));
    const double e_avg = (energy(make_weights(lo)) + energy(make_weights(hi))) / 2.0;
    CHECK(e_mid == doctest::Approx(e_avg).epsilon(1e-12));
  }
}

TEST_CASE("derivative extraction for additive spectra") {
  const std::vector<double> omegas = {0.3, 1.7, -0.9};
  const WeightVector w = default_weights(3);
  CHECK(oracle::derivative_extraction_noninteracting(omegas, w, 0b101) ==
        doctest::Approx(0.3 - 0.9).epsilon(1e-8));
  CHECK(oracle::derivative_extraction_noninteracting(omegas, w, 0b000) ==
        doctest::Approx(0.0));
  CHECK_THROWS(oracle::derivative_extraction_noninteracting(omegas, w, 0b1000));
  CHECK_THROWS(oracle::derivative_extraction_noninteracting({0.1}, w, 0b1));
}

}  // TEST_SUITE
