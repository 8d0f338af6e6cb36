// Copyright 2026 The chi2cavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "chi2cavity/amplitude.hpp"
#include "chi2cavity/errors.hpp"
#include "chi2cavity/sweep.hpp"

using namespace chi2;

namespace {

SystemParams resonant(double g, double kappa2 = 1.0, double f = 0.05) {
  SystemParams p;
  p.g = g;
  p.kappa2 = kappa2;
  p.drive_strength = f;
  return p;
}

enum Slot { C00, C10, C20, C30, C40, C01, C11, C21, C02 };

// Equations of motion on resonance, entered term by term from the ladder algebra
// (row = component being differentiated, i dc/dt = sum M c).
Eigen::Matrix<Complex, 9, 9> hand_written_system(double g, double k1, double k2, double f, bool keep) {
  const Complex i{0.0, 1.0};
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  Eigen::Matrix<Complex, 9, 9> m = Eigen::Matrix<Complex, 9, 9>::Zero();
  m(C00, C10) = f;
  m(C10, C00) = f;
  m(C10, C10) = -i * k1 / 2.0;
  m(C20, C01) = s2 * g;
  m(C20, C10) = s2 * f;
  m(C20, C20) = -i * k1;
  m(C30, C11) = s6 * g;
  m(C30, C20) = s3 * f;
  m(C30, C30) = -i * 1.5 * k1;
  m(C40, C21) = 2.0 * s3 * g;
  m(C40, C30) = 2.0 * f;
  m(C40, C40) = -i * 2.0 * k1;
  m(C01, C20) = s2 * g;
  m(C01, C11) = f;
  m(C01, C01) = -i * k2 / 2.0;
  m(C11, C30) = s6 * g;
  m(C11, C01) = f;
  m(C11, C11) = -i * (k1 + k2) / 2.0;
  m(C21, C02) = 2.0 * g;
  m(C21, C40) = 2.0 * s3 * g;
  m(C21, C11) = s2 * f;
  m(C21, C21) = -i * (k1 + k2 / 2.0);
  m(C02, C21) = 2.0 * g;
  m(C02, C02) = -i * k2;
  if (keep) {
    m(C10, C20) = s2 * f;
    m(C20, C30) = s3 * f;
    m(C30, C40) = 2.0 * f;
    m(C11, C21) = s2 * f;
  }
  return m;
}

// Root of c02(g) by secant iteration, independent of the closed form.
double c02_root(double kappa2, double f, double g0, double g1) {
  auto c02 = [&](double g) { return steady_amplitudes(resonant(g, kappa2, f)).c02; };
  Complex f0 = c02(g0), f1 = c02(g1);
  for (int it = 0; it < 60 && std::abs(g1 - g0) > 1e-15 * g1; ++it) {
    const double g2 = g1 - std::real(f1 * (g1 - g0) / (f1 - f0));
    g0 = g1;
    f0 = f1;
    g1 = g2;
    f1 = c02(g1);
  }
  return g1;
}

}  // namespace

TEST_CASE("closed-form optimal g") {
  CHECK(optimal_g(1.0, 1.0, 0.05) == doctest::Approx(0.86675).epsilon(1e-4));
  CHECK(optimal_g(1.0, 1.0, 0.0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(optimal_g(1.0, 2.0, 0.05) == doctest::Approx(1.2252550754842846).epsilon(1e-14));
  CHECK_THROWS_AS(optimal_g(0.0, 1.0, 0.05), InvalidArgument);
  CHECK_THROWS_AS(optimal_g(1.0, 1.0, -0.05), InvalidArgument);
}

TEST_CASE("amplitude system matches the equations of motion") {
  for (bool keep : {false, true}) {
    const auto sys = amplitude_system(resonant(0.9, 1.3, 0.05), {keep});
    const auto expected = hand_written_system(0.9, 1.0, 1.3, 0.05, keep);
    CHECK((sys.matrix - expected).cwiseAbs().maxCoeff() < 1e-15);
  }

  const auto sys = amplitude_system(resonant(0.9), {});
  // c10 row: drive from c00 and decay only.
  for (int col = 0; col < 9; ++col) {
    if (col == C00 || col == C10) continue;
    CHECK(sys.matrix(C10, col) == Complex{});
  }
  // c02 row: 0 = 2 g c21 - i kappa2 c02.
  CHECK(sys.matrix(C02, C21) == Complex(1.8, 0.0));
  CHECK(sys.matrix(C02, C02) == Complex(0.0, -1.0));
}

TEST_CASE("detuning enters the diagonal") {
  SystemParams p = resonant(0.9);
  p.delta = 0.4;
  p.delta_f = 0.1;
  p.direction = DriveDirection::Right;
  const auto sys = amplitude_system(p);
  const auto base = amplitude_system(resonant(0.9));
  const auto& basis = amplitude_basis();
  for (int k = 0; k < 9; ++k) {
    const double n = basis[k].first + 2.0 * basis[k].second;
    CHECK(std::abs(sys.matrix(k, k) - base.matrix(k, k) - 0.3 * n) < 1e-15);
  }
}

TEST_CASE("undriven ansatz is the vacuum") {
  const AmplitudeState s = steady_amplitudes(resonant(0.9, 1.0, 0.0));
  CHECK(s.c00 == Complex(1.0, 0.0));
  const auto arr = s.as_array();
  for (int k = 1; k < 9; ++k) CHECK(std::abs(arr[k]) == 0.0);
  CHECK_THROWS_AS(g2_bb_from_amplitudes(s), UndefinedStatistics);
  CHECK_THROWS_AS(g2_aa_from_amplitudes(s), UndefinedStatistics);
}

TEST_CASE("two-photon harmonic amplitude vanishes at the optimum") {
  for (auto [kappa2, f] : {std::pair{1.0, 0.05}, std::pair{2.0, 0.05}, std::pair{0.5, 0.02}, std::pair{1.0, 0.1}}) {
    const double g = optimal_g(1.0, kappa2, f);
    const AmplitudeState s = steady_amplitudes(resonant(g, kappa2, f));
    CHECK(std::abs(s.c02) <= 1e-10);
    // Same zero located numerically from the linear solve alone.
    const double root = c02_root(kappa2, f, 0.6 * g, 1.4 * g);
    CHECK(std::abs(root - g) / g <= 1e-8);
  }
  const AmplitudeState s = steady_amplitudes(resonant(optimal_g(1.0, 1.0, 0.05)));
  CHECK(g2_bb_from_amplitudes(s) <= 1e-6);
}

TEST_CASE("weak-drive hierarchy") {
  for (double g : {0.3, 0.867, 2.0, 5.0}) {
    const double f = 0.05;
    const AmplitudeState s = steady_amplitudes(resonant(g, 1.0, f));
    CHECK(std::abs(s.c10) < 10 * f);
    CHECK(std::abs(s.c20) < 10 * f * f);
    CHECK(std::abs(s.c01) < 10 * f * f);
    CHECK(std::abs(s.c30) < 10 * f * f * f);
    CHECK(std::abs(s.c11) < 10 * f * f * f);
  }
}

TEST_CASE("subleading drive terms are a small correction") {
  auto correction = [](double g, double f) {
    const double dropped = std::abs(steady_amplitudes(resonant(g, 1.0, f), {false}).c02);
    const double kept = std::abs(steady_amplitudes(resonant(g, 1.0, f), {true}).c02);
    return std::abs(kept - dropped) / dropped;
  };
  for (double g : {0.3, 0.5, 1.5, 2.0}) {
    CHECK(correction(g, 0.05) < 0.05);
    // Relative correction scales as F^2.
    CHECK(correction(g, 0.005) / correction(g, 0.05) == doctest::Approx(0.01).epsilon(0.05));
  }
}

TEST_CASE("g2 on the ansatz state") {
  AmplitudeState only_b;
  only_b.c01 = 0.02;
  CHECK(g2_bb_from_amplitudes(only_b) == 0.0);

  AmplitudeState pair;
  pair.c02 = 0.01;
  // Normalized state: (1 + |c02|^2) / (2 |c02|^2), i.e. 1 / (2 |c02|^2) to O(|c02|^2).
  CHECK(g2_bb_from_amplitudes(pair) == doctest::Approx(1.0001 / 2e-4).epsilon(1e-12));
  CHECK(g2_bb_from_amplitudes(pair) == doctest::Approx(1.0 / 2e-4).epsilon(1e-3));

  AmplitudeState two_a;
  two_a.c00 = 0.0;
  two_a.c20 = 1.0;
  CHECK(g2_aa_from_amplitudes(two_a) == doctest::Approx(0.5));
  CHECK_THROWS_AS(g2_bb_from_amplitudes(two_a), UndefinedStatistics);
}

TEST_CASE("amplitude model tracks the master equation away from the dip") {
  const SystemParams p = resonant(0.5);
  const auto [aa, bb] = g2_from_amplitudes(steady_amplitudes(p));
  const PhotonStatistics full = run_point(p);
  REQUIRE(full.g2_bb.has_value());
  CHECK(std::abs(bb - *full.g2_bb) / *full.g2_bb < 0.10);
  CHECK(std::abs(aa - *full.g2_aa) / *full.g2_aa < 0.10);
}
