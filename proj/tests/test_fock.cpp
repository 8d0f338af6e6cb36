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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "chi2cavity/errors.hpp"
#include "chi2cavity/fock.hpp"

using namespace chi2;

constexpr double kEps = std::numeric_limits<double>::epsilon();

TEST_CASE("basis dimensions") {
  CHECK(build_basis(4, 2).dim() == 15);
  CHECK(build_basis(1, 1).dim() == 4);
  CHECK(build_basis(6, 3).dim() == 28);
}

TEST_CASE("basis rejects non-positive cutoffs") {
  CHECK_THROWS_AS(build_basis(0, 2), InvalidArgument);
  CHECK_THROWS_AS(build_basis(3, 0), InvalidArgument);
  CHECK_THROWS_AS(build_basis(-1, -1), InvalidArgument);
}

TEST_CASE("flat index is an n_a-major bijection with vacuum first") {
  for (auto [na_cut, nb_cut] : {std::pair{1, 1}, std::pair{4, 2}, std::pair{6, 3}, std::pair{2, 7}}) {
    const FockBasis basis(na_cut, nb_cut);
    CHECK(basis.index(0, 0) == 0);
    std::set<std::size_t> seen;
    for (int na = 0; na <= na_cut; ++na) {
      for (int nb = 0; nb <= nb_cut; ++nb) {
        const auto i = basis.index(na, nb);
        CHECK(i == static_cast<std::size_t>(na * (nb_cut + 1) + nb));
        CHECK(basis.occupation(i) == std::pair{na, nb});
        seen.insert(i);
      }
    }
    CHECK(seen.size() == basis.dim());
    CHECK(*seen.rbegin() == basis.dim() - 1);
  }
  const FockBasis basis(2, 2);
  CHECK_THROWS_AS(basis.index(3, 0), InvalidArgument);
  CHECK_THROWS_AS(basis.index(0, -1), InvalidArgument);
  CHECK_THROWS_AS(basis.occupation(9), InvalidArgument);
}

TEST_CASE("annihilator matrix elements") {
  const FockBasis basis(4, 2);
  const auto a = annihilator_a(basis);
  const auto b = annihilator_b(basis);

  CHECK(std::abs(a.matrix(basis.index(0, 0), basis.index(1, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(a.matrix(basis.index(1, 0), basis.index(2, 0)) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(a.matrix(basis.index(3, 2), basis.index(4, 2)) - 2.0) < 1e-15);
  CHECK(std::abs(b.matrix(basis.index(0, 0), basis.index(0, 1)) - 1.0) < 1e-15);
  CHECK(std::abs(b.matrix(basis.index(0, 1), basis.index(0, 2)) - std::sqrt(2.0)) < 1e-15);

  const Vector vac = fock_state(basis, 0, 0);
  CHECK((a.matrix * vac).norm() == 0.0);
  CHECK((b.matrix * vac).norm() == 0.0);

  // Exactly one nonzero per column with n_a > 0, none elsewhere.
  for (std::size_t j = 0; j < basis.dim(); ++j) {
    const auto [na, nb] = basis.occupation(j);
    const Vector col = a.matrix.col(static_cast<Eigen::Index>(j));
    if (na == 0) {
      CHECK(col.norm() == 0.0);
    } else {
      CHECK(std::abs(col(basis.index(na - 1, nb)) - std::sqrt(double(na))) < 1e-15);
      CHECK(std::abs(col.squaredNorm() - na) < 1e-12);
    }
  }
}

TEST_CASE("single-mode basis with one rung") {
  const FockBasis basis(1, 1);
  const auto a = annihilator_a(basis);
  CHECK(a.matrix(basis.index(0, 0), basis.index(1, 0)) == Complex(1.0, 0.0));
}

TEST_CASE("number operators are diagonal occupations") {
  const FockBasis basis(5, 3);
  const Matrix na = annihilator_a(basis).number().matrix;
  const Matrix nb = annihilator_b(basis).number().matrix;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto [occ_a, occ_b] = basis.occupation(i);
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      const Complex expect_a = i == j ? Complex(occ_a, 0) : Complex{};
      const Complex expect_b = i == j ? Complex(occ_b, 0) : Complex{};
      CHECK(std::abs(na(i, j) - expect_a) < 1e-14);
      CHECK(std::abs(nb(i, j) - expect_b) < 1e-14);
    }
  }
  CHECK(commutator(na, nb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("truncated commutators") {
  for (auto [na_cut, nb_cut] : {std::pair{1, 1}, std::pair{4, 2}, std::pair{6, 3}}) {
    const FockBasis basis(na_cut, nb_cut);
    const auto a = annihilator_a(basis);
    const auto b = annihilator_b(basis);
    const Matrix ca = commutator(a.matrix, a.adjoint().matrix);
    const Matrix cb = commutator(b.matrix, b.adjoint().matrix);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
      const auto [na, nb] = basis.occupation(i);
      // sqrt(n) * sqrt(n) is n only up to rounding, so "exact" means a few ulps.
      const double expect_a = na < na_cut ? 1.0 : -static_cast<double>(na_cut);
      const double expect_b = nb < nb_cut ? 1.0 : -static_cast<double>(nb_cut);
      CHECK(std::abs(ca(i, i) - expect_a) <= 8 * kEps * std::max(1.0, double(na_cut)));
      CHECK(std::abs(cb(i, i) - expect_b) <= 8 * kEps * std::max(1.0, double(nb_cut)));
    }
    // Off-diagonal parts vanish identically.
    Matrix off_a = ca;
    off_a.diagonal().setZero();
    CHECK(off_a.cwiseAbs().maxCoeff() == 0.0);
    CHECK(commutator(a.matrix, b.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK(commutator(a.matrix, b.adjoint().matrix).cwiseAbs().maxCoeff() == 0.0);
  }
}
