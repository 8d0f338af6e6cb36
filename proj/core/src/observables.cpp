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

#include "chi2cavity/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chi2cavity/errors.hpp"

namespace chi2 {

namespace {

// Tr{O rho}; O is Hermitian here, so the imaginary part is rounding noise.
double expectation(const Matrix& op, const Matrix& rho) {
  const Complex v = (op * rho).trace();
  const double scale = std::max(1.0, std::abs(v.real()));
  if (std::abs(v.imag()) > 1e-12 * scale) {
    throw SolverFailure("expectation value has imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

double g2_of(const DensityMatrix& rho, const ModeOperator& c, const char* mode) {
  if (!(c.basis == rho.basis())) throw DimensionMismatch("operator and state bases differ");
  const Matrix cd = c.matrix.adjoint();
  const double n = expectation(cd * c.matrix, rho.matrix());
  if (n <= kVacuumOccupationTol) {
    throw UndefinedStatistics(std::string("g2 of mode ") + mode + " is undefined: mean occupation " +
                              std::to_string(n));
  }
  const double pairs = expectation(cd * cd * c.matrix * c.matrix, rho.matrix());
  return pairs / (n * n);
}

}  // namespace

double g2_aa(const DensityMatrix& rho, const ModeOperator& a) { return g2_of(rho, a, "a"); }

double g2_bb(const DensityMatrix& rho, const ModeOperator& b) { return g2_of(rho, b, "b"); }

double mean_photon(const DensityMatrix& rho, Mode mode) {
  const FockBasis& basis = rho.basis();
  double n = 0.0;
  // Number operators are diagonal in the Fock basis.
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto [na, nb] = basis.occupation(i);
    const double p = rho.matrix()(i, i).real();
    n += (mode == Mode::A ? na : nb) * p;
  }
  return n;
}

PhotonStatistics photon_statistics(const DensityMatrix& rho) {
  const FockBasis& basis = rho.basis();
  PhotonStatistics s;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    s.populations[basis.occupation(i)] = rho.matrix()(i, i).real();
  }
  s.n_a = mean_photon(rho, Mode::A);
  s.n_b = mean_photon(rho, Mode::B);
  try {
    s.g2_aa = g2_aa(rho, annihilator_a(basis));
  } catch (const UndefinedStatistics&) {
  }
  try {
    s.g2_bb = g2_bb(rho, annihilator_b(basis));
  } catch (const UndefinedStatistics&) {
  }
  return s;
}

}  // namespace chi2
