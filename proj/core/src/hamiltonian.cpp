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

#include "chi2cavity/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chi2cavity/errors.hpp"

namespace chi2 {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be finite");
}

}  // namespace

std::string_view to_string(DriveDirection direction) noexcept {
  return direction == DriveDirection::Left ? "left" : "right";
}

DriveDirection parse_direction(std::string_view text) {
  if (text == "left") return DriveDirection::Left;
  if (text == "right") return DriveDirection::Right;
  throw InvalidArgument("unknown drive direction '" + std::string(text) + "' (expected left|right)");
}

void SystemParams::validate() const {
  require_finite(delta, "delta");
  require_finite(g, "g");
  require_finite(kappa1, "kappa1");
  require_finite(kappa2, "kappa2");
  require_finite(drive_strength, "drive_strength");
  require_finite(delta_f, "delta_f");
  if (kappa1 <= 0.0) throw InvalidArgument("kappa1 must be > 0");
  if (kappa2 <= 0.0) throw InvalidArgument("kappa2 must be > 0");
  if (drive_strength < 0.0) throw InvalidArgument("drive_strength must be >= 0");
  if (g < 0.0) throw InvalidArgument("g must be >= 0");
}

void FizeauParams::validate() const {
  for (double v : {n, r, omega_rot, lambda, dn_dlambda, omega1}) require_finite(v, "Fizeau parameter");
  if (n <= 1.0) throw InvalidArgument("refractive index must be > 1");
  if (r <= 0.0) throw InvalidArgument("cavity radius must be > 0");
  if (lambda <= 0.0) throw InvalidArgument("wavelength must be > 0");
  if (omega1 <= 0.0) throw InvalidArgument("omega1 must be > 0");
}

double fizeau_shift(const FizeauParams& fp, DriveDirection direction) {
  fp.validate();
  const double drag = 1.0 - 1.0 / (fp.n * fp.n) - (fp.lambda / fp.n) * fp.dn_dlambda;
  return direction_sign(direction) * fp.n * fp.r * fp.omega_rot * fp.omega1 / kSpeedOfLight * drag;
}

double drive_strength_from_power(double kappa1, double power, double omega_l) {
  require_finite(kappa1, "kappa1");
  require_finite(power, "power");
  require_finite(omega_l, "omega_l");
  if (kappa1 <= 0.0) throw InvalidArgument("kappa1 must be > 0");
  if (omega_l <= 0.0) throw InvalidArgument("laser frequency must be > 0");
  if (power < 0.0) throw InvalidArgument("drive power must be >= 0");
  return std::sqrt(2.0 * kappa1 * power / (kHbar * omega_l));
}

namespace {

// (n_a + 2 n_b) detuning diagonal, chi(2) exchange and optional drive, all in
// one pass over the basis.
Matrix assemble(const FockBasis& basis, double mode_a_freq, double g, double drive) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  Matrix h = Matrix::Zero(d, d);
  for (int na = 0; na <= basis.na_cut(); ++na) {
    for (int nb = 0; nb <= basis.nb_cut(); ++nb) {
      const auto i = basis.index(na, nb);
      h(i, i) = mode_a_freq * (na + 2.0 * nb);
      // b^+ a^2 |na, nb> = sqrt(na (na-1)) sqrt(nb+1) |na-2, nb+1>
      if (na >= 2 && nb + 1 <= basis.nb_cut()) {
        const auto j = basis.index(na - 2, nb + 1);
        const double amp = g * std::sqrt(static_cast<double>(na) * (na - 1) * (nb + 1));
        h(j, i) += amp;
        h(i, j) += amp;
      }
      if (drive != 0.0 && na + 1 <= basis.na_cut()) {
        const auto j = basis.index(na + 1, nb);
        const double amp = drive * std::sqrt(static_cast<double>(na + 1));
        h(j, i) += amp;
        h(i, j) += amp;
      }
    }
  }
  return h;
}

}  // namespace

Matrix build_h_eff(const SystemParams& p, const FockBasis& basis) {
  p.validate();
  return assemble(basis, p.delta + p.fizeau_shift(), p.g, p.drive_strength);
}

Matrix build_h_lab(double omega1, const SystemParams& p, const FockBasis& basis) {
  require_finite(omega1, "omega1");
  require_finite(p.g, "g");
  require_finite(p.delta_f, "delta_f");
  if (p.g < 0.0) throw InvalidArgument("g must be >= 0");
  return assemble(basis, omega1 + p.fizeau_shift(), p.g, 0.0);
}

EigenLevels eigenlevels(const Matrix& h, std::size_t k) {
  if (h.rows() != h.cols()) throw DimensionMismatch("eigenlevels needs a square matrix");
  if (k > static_cast<std::size_t>(h.rows())) {
    throw InvalidArgument("requested " + std::to_string(k) + " levels from a " +
                          std::to_string(h.rows()) + "-dimensional space");
  }
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw InvalidArgument("matrix is not Hermitian (max |H - H^+| = " + std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw SolverFailure("Hermitian eigensolver did not converge");

  EigenLevels levels;
  const auto n = static_cast<Eigen::Index>(k);
  levels.energies.reserve(k);
  // Eigen returns eigenvalues in ascending order.
  for (Eigen::Index i = 0; i < n; ++i) levels.energies.push_back(solver.eigenvalues()(i));
  levels.states = solver.eigenvectors().leftCols(n);
  return levels;
}

double resonance_angular_condition(double g) {
  require_finite(g, "g");
  if (g < 0.0) throw InvalidArgument("g must be >= 0");
  return std::sqrt(2.0) / 4.0 * g;
}

}  // namespace chi2
