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

#include "chi2cavity/fock.hpp"

#include <cmath>
#include <string>

#include "chi2cavity/errors.hpp"

namespace chi2 {

FockBasis::FockBasis(int na_cut, int nb_cut) : na_cut_(na_cut), nb_cut_(nb_cut) {
  if (na_cut < 1 || nb_cut < 1) {
    throw InvalidArgument("Fock cutoffs must be >= 1, got (" + std::to_string(na_cut) + ", " +
                          std::to_string(nb_cut) + ")");
  }
}

std::size_t FockBasis::index(int na, int nb) const {
  if (!contains(na, nb)) {
    throw InvalidArgument("occupation (" + std::to_string(na) + ", " + std::to_string(nb) +
                          ") outside truncated basis");
  }
  return static_cast<std::size_t>(na) * static_cast<std::size_t>(nb_cut_ + 1) +
         static_cast<std::size_t>(nb);
}

std::pair<int, int> FockBasis::occupation(std::size_t index) const {
  if (index >= dim()) throw InvalidArgument("basis index out of range");
  const auto stride = static_cast<std::size_t>(nb_cut_ + 1);
  return {static_cast<int>(index / stride), static_cast<int>(index % stride)};
}

FockBasis build_basis(int na_cut, int nb_cut) { return FockBasis(na_cut, nb_cut); }

ModeOperator annihilator_a(const FockBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  Matrix m = Matrix::Zero(d, d);
  for (int na = 1; na <= basis.na_cut(); ++na) {
    for (int nb = 0; nb <= basis.nb_cut(); ++nb) {
      m(basis.index(na - 1, nb), basis.index(na, nb)) = std::sqrt(static_cast<double>(na));
    }
  }
  return {std::move(m), basis};
}

ModeOperator annihilator_b(const FockBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  Matrix m = Matrix::Zero(d, d);
  for (int na = 0; na <= basis.na_cut(); ++na) {
    for (int nb = 1; nb <= basis.nb_cut(); ++nb) {
      m(basis.index(na, nb - 1), basis.index(na, nb)) = std::sqrt(static_cast<double>(nb));
    }
  }
  return {std::move(m), basis};
}

Vector fock_state(const FockBasis& basis, int na, int nb) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis.dim()));
  v(static_cast<Eigen::Index>(basis.index(na, nb))) = 1.0;
  return v;
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

}  // namespace chi2
