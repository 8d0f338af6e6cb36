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

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace chi2 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Truncated two-mode number basis |n_a, n_b>, 0 <= n_a <= na_cut,
/// 0 <= n_b <= nb_cut.
///
/// Flat index is n_a-major: index = n_a * (nb_cut + 1) + n_b, so the vacuum
/// sits at index 0. Everything downstream (operators, vectorized density
/// matrices, Liouvillians) relies on this order.
class FockBasis {
 public:
  /// Throws InvalidArgument unless both cutoffs are >= 1.
  FockBasis(int na_cut, int nb_cut);

  int na_cut() const noexcept { return na_cut_; }
  int nb_cut() const noexcept { return nb_cut_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(na_cut_ + 1) * static_cast<std::size_t>(nb_cut_ + 1);
  }

  /// Throws InvalidArgument for occupations outside the truncation.
  std::size_t index(int na, int nb) const;
  /// Inverse of index(): returns (n_a, n_b).
  std::pair<int, int> occupation(std::size_t index) const;

  bool contains(int na, int nb) const noexcept {
    return na >= 0 && nb >= 0 && na <= na_cut_ && nb <= nb_cut_;
  }

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  int na_cut_;
  int nb_cut_;
};

FockBasis build_basis(int na_cut, int nb_cut);

/// A dense operator on a FockBasis.
struct ModeOperator {
  Matrix matrix;
  FockBasis basis;

  ModeOperator adjoint() const { return {matrix.adjoint(), basis}; }
  /// c^dagger c
  ModeOperator number() const { return {matrix.adjoint() * matrix, basis}; }
};

/// Fundamental-mode annihilator: a|n_a, n_b> = sqrt(n_a) |n_a - 1, n_b>.
ModeOperator annihilator_a(const FockBasis& basis);
/// Second-harmonic annihilator: b|n_a, n_b> = sqrt(n_b) |n_a, n_b - 1>.
ModeOperator annihilator_b(const FockBasis& basis);

/// Column vector of the basis state |n_a, n_b>.
Vector fock_state(const FockBasis& basis, int na, int nb);

/// [x, y] = xy - yx
Matrix commutator(const Matrix& x, const Matrix& y);

}  // namespace chi2
