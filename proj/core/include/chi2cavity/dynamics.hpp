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

#include "chi2cavity/fock.hpp"

namespace chi2 {

/// Column-stacking vectorization: element (r, c) of a D x D matrix lands at
/// c * D + r. Under this convention vec(X Y Z) = (Z^T (x) X) vec(Y).
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, std::size_t dim);

/// D x D density matrix on a Fock basis.
///
/// Construction only checks dimensions; the physical invariants are exposed as
/// diagnostics so callers decide which tolerance applies.
class DensityMatrix {
 public:
  DensityMatrix(Matrix matrix, FockBasis basis);

  /// |n_a, n_b><n_a, n_b|
  static DensityMatrix fock(const FockBasis& basis, int na, int nb);
  /// |psi><psi| / <psi|psi>
  static DensityMatrix pure(const FockBasis& basis, const Vector& psi);

  const Matrix& matrix() const noexcept { return matrix_; }
  const FockBasis& basis() const noexcept { return basis_; }

  Complex trace() const { return matrix_.trace(); }
  /// max |rho - rho^+|
  double hermiticity_error() const;
  /// |Tr rho - 1|
  double trace_error() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  Matrix matrix_;
  FockBasis basis_;
};

/// Superoperator of the master equation
///   d rho/dt = -i[H, rho] + kappa1 D[a] rho + kappa2 D[b] rho,
///   D[c] rho = c rho c^+ - (c^+c rho + rho c^+c) / 2,
/// acting on column-stacked density matrices:
///   L = -i (I (x) H - H^T (x) I) + sum_c kappa_c (conj(c) (x) c
///       - (I (x) c^+c + (c^+c)^T (x) I) / 2).
struct Liouvillian {
  SparseMatrix matrix;  ///< D^2 x D^2
  FockBasis basis;
  double kappa1;
  double kappa2;
  double hamiltonian_norm;  ///< spectral norm of H, used for step-size bounds

  Matrix dense() const { return Matrix(matrix); }
  Vector apply(const Vector& vec_rho) const { return matrix * vec_rho; }
};

/// Rates must be >= 0; h, a and b must share one basis.
Liouvillian build_liouvillian(const Matrix& h, const ModeOperator& a, const ModeOperator& b,
                              double kappa1, double kappa2);

enum class SteadyStateMethod {
  Auto,       ///< SparseLU for D <= kDirectSteadyStateMaxDim, Iterative above
  DenseLU,
  SparseLU,
  Iterative,  ///< ILUT-preconditioned BiCGSTAB; falls back to SparseLU
};

inline constexpr std::size_t kDirectSteadyStateMaxDim = 45;

/// Residual bound ||L vec(rho_ss)||_inf enforced by steady_state.
inline constexpr double kSteadyStateResidualTol = 1e-10;

/// Stationary state of `l`.
///
/// The equation for the (0,0) element is replaced by the trace condition
/// sum_i rho_ii = 1 and the resulting square system is solved directly. The
/// result is projected onto its Hermitian part and checked against the
/// residual bound. Throws NonUniqueSteadyState when the numerical nullspace of
/// `l` has dimension > 1, SolverFailure for any other breakdown.
DensityMatrix steady_state(const Liouvillian& l, SteadyStateMethod method = SteadyStateMethod::Auto);

/// Largest step accepted by evolve(): 0.01 / max(kappa1, kappa2, ||H||).
double max_stable_step(const Liouvillian& l);

/// Trace drift bound enforced by evolve().
inline constexpr double kTraceDriftTol = 1e-8;

/// Fixed-step RK4 propagation of vec(rho) to t_final using ceil(t_final/dt)
/// equal steps. No renormalization is applied; a trace drift above
/// kTraceDriftTol throws StepSizeError, as does dt > max_stable_step(l).
DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& l, double t_final, double dt);

}  // namespace chi2
