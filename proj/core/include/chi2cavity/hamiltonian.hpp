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

#include <cstddef>
#include <numbers>
#include <string_view>
#include <vector>

#include "chi2cavity/fock.hpp"

namespace chi2 {

/// Physical constants (SI) used by the two unit-conversion helpers.
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kHbar = 1.054571817e-34;          // J s

/// Port through which the pump enters the spinning resonator.
enum class DriveDirection { Left, Right };

std::string_view to_string(DriveDirection direction) noexcept;
/// Accepts "left" / "right" (case-sensitive). Throws InvalidArgument otherwise.
DriveDirection parse_direction(std::string_view text);

/// +1 for Left, -1 for Right.
inline double direction_sign(DriveDirection direction) noexcept {
  return direction == DriveDirection::Left ? 1.0 : -1.0;
}

/// Model parameters in simulation units: hbar = 1 and every rate or frequency
/// is expressed in units of kappa1 (which therefore defaults to 1).
///
/// `delta_f` is the Fizeau shift seen by light entering through the left port.
/// Light entering from the right sees the opposite shift, so the Hamiltonian
/// uses fizeau_shift() = +delta_f (Left) or -delta_f (Right). The second
/// harmonic is pinned at omega2 = 2 omega1, hence its shift is 2 * fizeau_shift().
struct SystemParams {
  double delta = 0.0;           ///< omega1 - omega_L
  double g = 0.0;               ///< chi(2) hopping between a and b
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double drive_strength = 0.0;  ///< F
  double delta_f = 0.0;
  DriveDirection direction = DriveDirection::Left;

  /// Signed shift of the fundamental mode for the configured port.
  double fizeau_shift() const noexcept { return direction_sign(direction) * delta_f; }
  /// Throws InvalidArgument on kappa1 <= 0, kappa2 <= 0, F < 0, g < 0 or
  /// non-finite values.
  void validate() const;
};

/// SI description of the spinning resonator used to obtain a Fizeau shift.
///
/// The defaults are not taken from any experiment: they describe a 1.1 mm
/// radius resonator of index 1.4 spinning at 6.6 kHz, pumped at 1550 nm,
/// with dispersion neglected.
struct FizeauParams {
  double n = 1.4;
  double r = 1.1e-3;                          ///< m
  double omega_rot = 2.0 * std::numbers::pi * 6.6e3;  ///< rad/s
  double lambda = 1550e-9;                    ///< m
  double dn_dlambda = 0.0;                    ///< 1/m
  double omega1 = 2.0 * std::numbers::pi * kSpeedOfLight / 1550e-9;  ///< rad/s

  void validate() const;
};

/// Fizeau shift of the fundamental mode in rad/s:
///   +/- (n r Omega omega1 / c) (1 - 1/n^2 - (lambda/n) dn/dlambda),
/// positive for Left, negative for Right.
double fizeau_shift(const FizeauParams& fp, DriveDirection direction);

/// F = sqrt(2 kappa1 P / (hbar omega_L)) in rad/s. kappa1 and omega_L in rad/s,
/// power in W. power == 0 is allowed and gives 0.
double drive_strength_from_power(double kappa1, double power, double omega_l);

/// Rotating-frame Hamiltonian (hbar = 1):
///   (D) a^+a + 2 (D) b^+b + g (b a^+^2 + b^+ a^2) + F (a + a^+),
/// where D = delta + fizeau_shift().
Matrix build_h_eff(const SystemParams& p, const FockBasis& basis);

/// Lab-frame Hamiltonian without drive, omega2 = 2 omega1:
///   (omega1 + S) a^+a + 2 (omega1 + S) b^+b + g (b a^+^2 + b^+ a^2),
/// where S = p.fizeau_shift(). Only g, delta_f and direction of `p` are used.
Matrix build_h_lab(double omega1, const SystemParams& p, const FockBasis& basis);

struct EigenLevels {
  std::vector<double> energies;  ///< ascending
  Matrix states;                 ///< column k is the eigenvector of energies[k]
};

/// The k lowest eigenpairs of a Hermitian matrix. Rejects inputs with
/// max |h - h^+| > 1e-10 and k outside [0, dim].
EigenLevels eigenlevels(const Matrix& h, std::size_t k);

/// Fizeau shift magnitude (sqrt(2)/4) g at which right-port driving hits the
/// two-photon resonance while left-port driving stays blockaded.
double resonance_angular_condition(double g);

}  // namespace chi2
