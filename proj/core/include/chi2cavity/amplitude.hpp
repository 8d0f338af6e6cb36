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

#pragma once

#include <array>
#include <utility>

#include "chi2cavity/hamiltonian.hpp"

namespace chi2 {

/// Steady-state amplitudes of the nine-state weak-drive ansatz
///   |psi> = c00|0,0> + c10|1,0> + c20|2,0> + c30|3,0> + c40|4,0>
///         + c01|0,1> + c11|1,1> + c21|2,1> + c02|0,2>,
/// normalized so that c00 = 1.
struct AmplitudeState {
  Complex c00{1.0, 0.0};
  Complex c10, c20, c30, c40;
  Complex c01, c11, c21, c02;

  /// Ordered as amplitude_basis().
  std::array<Complex, 9> as_array() const {
    return {c00, c10, c20, c30, c40, c01, c11, c21, c02};
  }
};

/// The (n_a, n_b) labels of the ansatz, in the order used by AmplitudeSystem.
const std::array<std::pair<int, int>, 9>& amplitude_basis();

struct AmplitudeModelOptions {
  /// Keep the drive couplings that connect c10, c20, c30 and c11 to the next
  /// state up the ladder (c20, c30, c40 and c21). They are one order higher in
  /// F than the leading terms of their equations and are dropped by default.
  bool keep_subleading = false;
};

/// i dc/dt = M c with M = H' = H_eff - i kappa1/2 a^+a - i kappa2/2 b^+b
/// projected onto the ansatz.
///
/// Steady state with c00 pinned: rows 1..8 of M c = 0, i.e.
///   M[1:,1:] c[1:] = -M[1:,0] * c00.
/// The c00 row is not part of the steady-state system since c00 is fixed.
struct AmplitudeSystem {
  Eigen::Matrix<Complex, 9, 9> matrix;

  Eigen::Matrix<Complex, 8, 8> reduced() const { return matrix.bottomRightCorner<8, 8>(); }
  Eigen::Matrix<Complex, 8, 1> rhs() const { return -matrix.block<8, 1>(1, 0); }
};

/// Detunings other than zero add (delta + fizeau_shift) (n_a + 2 n_b) on the
/// diagonal. That generalization goes beyond the resonant derivation the
/// ansatz is usually quoted for.
AmplitudeSystem amplitude_system(const SystemParams& p, AmplitudeModelOptions opts = {});

/// Throws SolverFailure when the reduced system is singular.
AmplitudeState steady_amplitudes(const SystemParams& p, AmplitudeModelOptions opts = {});

/// Hopping strength where the two-photon second-harmonic amplitude c02
/// vanishes on resonance:
///   g = sqrt(4F^2 + (2 kappa1 + kappa2)(kappa1 + kappa2)) / (2 sqrt 2).
double optimal_g(double kappa1, double kappa2, double f);

/// g2 of both modes evaluated on the normalized ansatz state. Either value
/// throws UndefinedStatistics if its mode is empty, so they are computed
/// separately.
double g2_aa_from_amplitudes(const AmplitudeState& s);
double g2_bb_from_amplitudes(const AmplitudeState& s);
std::pair<double, double> g2_from_amplitudes(const AmplitudeState& s);

}  // namespace chi2
