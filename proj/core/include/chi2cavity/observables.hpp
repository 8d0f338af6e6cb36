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

#include <map>
#include <optional>
#include <utility>

#include "chi2cavity/dynamics.hpp"

namespace chi2 {

enum class Mode { A, B };

/// Below this mean occupation a g2 value is reported as undefined.
inline constexpr double kVacuumOccupationTol = 1e-12;

/// g2_aa(0) = Tr{a^+^2 a^2 rho} / Tr{a^+a rho}^2.
/// Throws UndefinedStatistics when <a^+a> <= kVacuumOccupationTol.
double g2_aa(const DensityMatrix& rho, const ModeOperator& a);
/// Same on mode b.
double g2_bb(const DensityMatrix& rho, const ModeOperator& b);

double mean_photon(const DensityMatrix& rho, Mode mode);

struct PhotonStatistics {
  std::optional<double> g2_aa;  ///< empty when mode a is vacuum
  std::optional<double> g2_bb;
  double n_a = 0.0;
  double n_b = 0.0;
  std::map<std::pair<int, int>, double> populations;
};

/// Everything above in one pass; vacuum modes yield empty g2 values instead of
/// throwing.
PhotonStatistics photon_statistics(const DensityMatrix& rho);

}  // namespace chi2
