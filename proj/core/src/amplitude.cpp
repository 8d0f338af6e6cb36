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

#include "chi2cavity/amplitude.hpp"

#include <algorithm>
#include <cmath>

#include "chi2cavity/errors.hpp"
#include "chi2cavity/observables.hpp"

namespace chi2 {

namespace {

constexpr std::array<std::pair<int, int>, 9> kAnsatz{{
    {0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2},
}};

int slot(int na, int nb) {
  for (std::size_t i = 0; i < kAnsatz.size(); ++i) {
    if (kAnsatz[i] == std::pair{na, nb}) return static_cast<int>(i);
  }
  return -1;
}

// Rows whose coupling to the next n_a state is one order higher in F than the
// rest of the equation: c10 <- c20, c20 <- c30, c30 <- c40, c11 <- c21.
bool is_subleading(std::pair<int, int> row, std::pair<int, int> col) {
  const bool upward = col.first == row.first + 1 && col.second == row.second;
  const bool flagged = row == std::pair{1, 0} || row == std::pair{2, 0} || row == std::pair{3, 0} ||
                       row == std::pair{1, 1};
  return upward && flagged;
}

}  // namespace

const std::array<std::pair<int, int>, 9>& amplitude_basis() { return kAnsatz; }

AmplitudeSystem amplitude_system(const SystemParams& p, AmplitudeModelOptions opts) {
  p.validate();
  const double detuning = p.delta + p.fizeau_shift();
  const Complex i_unit{0.0, 1.0};
  const double f = p.drive_strength;

  AmplitudeSystem sys;
  sys.matrix.setZero();
  for (int row = 0; row < 9; ++row) {
    const auto [na, nb] = kAnsatz[static_cast<std::size_t>(row)];
    sys.matrix(row, row) = detuning * (na + 2.0 * nb) - 0.5 * i_unit * (p.kappa1 * na + p.kappa2 * nb);

    // F (a + a^+): <na, nb| a |na+1, nb> = sqrt(na+1), <na, nb| a^+ |na-1, nb> = sqrt(na)
    for (int dna : {-1, +1}) {
      const int col = slot(na + dna, nb);
      if (col < 0) continue;
      if (!opts.keep_subleading && is_subleading({na, nb}, kAnsatz[static_cast<std::size_t>(col)])) continue;
      sys.matrix(row, col) += f * std::sqrt(static_cast<double>(std::max(na, na + dna)));
    }
    // g b a^+^2 pulls from (na-2, nb+1); g b^+ a^2 pulls from (na+2, nb-1).
    if (const int col = slot(na - 2, nb + 1); col >= 0) {
      sys.matrix(row, col) += p.g * std::sqrt(static_cast<double>(na) * (na - 1) * (nb + 1));
    }
    if (const int col = slot(na + 2, nb - 1); col >= 0) {
      sys.matrix(row, col) += p.g * std::sqrt(static_cast<double>(na + 2) * (na + 1) * nb);
    }
  }
  return sys;
}

AmplitudeState steady_amplitudes(const SystemParams& p, AmplitudeModelOptions opts) {
  const AmplitudeSystem sys = amplitude_system(p, opts);
  const Eigen::Matrix<Complex, 8, 8> m = sys.reduced();
  Eigen::FullPivLU<Eigen::Matrix<Complex, 8, 8>> lu(m);
  if (!lu.isInvertible() || !(lu.rcond() > 1e-14)) {
    throw SolverFailure("amplitude equations are singular");
  }
  const Eigen::Matrix<Complex, 8, 1> c = lu.solve(sys.rhs());
  AmplitudeState s;
  s.c10 = c(0);
  s.c20 = c(1);
  s.c30 = c(2);
  s.c40 = c(3);
  s.c01 = c(4);
  s.c11 = c(5);
  s.c21 = c(6);
  s.c02 = c(7);
  return s;
}

double optimal_g(double kappa1, double kappa2, double f) {
  if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw InvalidArgument("loss rates must be > 0");
  if (!(f >= 0.0) || !std::isfinite(f)) throw InvalidArgument("drive strength must be >= 0");
  return std::sqrt(4.0 * f * f + (2.0 * kappa1 + kappa2) * (kappa1 + kappa2)) / (2.0 * std::sqrt(2.0));
}

namespace {

struct Moments {
  double n_a = 0.0, n_b = 0.0, pairs_a = 0.0, pairs_b = 0.0;
};

Moments moments(const AmplitudeState& s) {
  const auto c = s.as_array();
  double norm = 0.0;
  for (const Complex& x : c) norm += std::norm(x);
  Moments m;
  if (!(norm > 0.0)) return m;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto [na, nb] = kAnsatz[i];
    const double p = std::norm(c[i]) / norm;
    m.n_a += na * p;
    m.n_b += nb * p;
    m.pairs_a += na * (na - 1.0) * p;
    m.pairs_b += nb * (nb - 1.0) * p;
  }
  return m;
}

}  // namespace

double g2_aa_from_amplitudes(const AmplitudeState& s) {
  const Moments m = moments(s);
  if (!(m.n_a > kVacuumOccupationTol)) throw UndefinedStatistics("ansatz has no fundamental-mode photons");
  return m.pairs_a / (m.n_a * m.n_a);
}

double g2_bb_from_amplitudes(const AmplitudeState& s) {
  const Moments m = moments(s);
  if (!(m.n_b > kVacuumOccupationTol)) throw UndefinedStatistics("ansatz has no second-harmonic photons");
  return m.pairs_b / (m.n_b * m.n_b);
}

std::pair<double, double> g2_from_amplitudes(const AmplitudeState& s) {
  return {g2_aa_from_amplitudes(s), g2_bb_from_amplitudes(s)};
}

}  // namespace chi2
