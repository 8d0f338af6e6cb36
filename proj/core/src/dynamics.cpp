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

#include "chi2cavity/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <Eigen/SparseQR>

#include "chi2cavity/errors.hpp"

namespace chi2 {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Appends scale * (x (x) y) to `out`, skipping structural zeros.
void add_kron(std::vector<Triplet>& out, const Matrix& x, const Matrix& y, Complex scale) {
  const Eigen::SparseMatrix<Complex> xs = x.sparseView();
  const Eigen::SparseMatrix<Complex> ys = y.sparseView();
  const Eigen::Index ry = y.rows();
  const Eigen::Index cy = y.cols();
  for (Eigen::Index j = 0; j < xs.outerSize(); ++j) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator xi(xs, j); xi; ++xi) {
      for (Eigen::Index l = 0; l < ys.outerSize(); ++l) {
        for (Eigen::SparseMatrix<Complex>::InnerIterator yi(ys, l); yi; ++yi) {
          out.emplace_back(xi.row() * ry + yi.row(), j * cy + l, scale * xi.value() * yi.value());
        }
      }
    }
  }
}

Eigen::Index trace_slot(Eigen::Index i, Eigen::Index dim) { return i * dim + i; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (v.size() != d * d) throw DimensionMismatch("vector length is not dim^2");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

DensityMatrix::DensityMatrix(Matrix matrix, FockBasis basis)
    : matrix_(std::move(matrix)), basis_(basis) {
  const auto d = static_cast<Eigen::Index>(basis_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionMismatch("density matrix size does not match basis dimension");
  }
}

DensityMatrix DensityMatrix::fock(const FockBasis& basis, int na, int nb) {
  const Vector psi = fock_state(basis, na, nb);
  return DensityMatrix(psi * psi.adjoint(), basis);
}

DensityMatrix DensityMatrix::pure(const FockBasis& basis, const Vector& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) throw InvalidArgument("cannot build a pure state from a zero vector");
  return DensityMatrix(psi * psi.adjoint() / norm2, basis);
}

double DensityMatrix::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(matrix_.trace() - Complex{1.0, 0.0}); }

double DensityMatrix::min_eigenvalue() const {
  const Matrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

Liouvillian build_liouvillian(const Matrix& h, const ModeOperator& a, const ModeOperator& b,
                              double kappa1, double kappa2) {
  const auto d = static_cast<Eigen::Index>(a.basis.dim());
  if (!(a.basis == b.basis)) throw DimensionMismatch("a and b act on different bases");
  if (h.rows() != d || h.cols() != d || a.matrix.rows() != d || b.matrix.rows() != d) {
    throw DimensionMismatch("Hamiltonian and mode operators must be " + std::to_string(d) + "x" +
                            std::to_string(d));
  }
  if (!(kappa1 >= 0.0) || !(kappa2 >= 0.0) || !std::isfinite(kappa1) || !std::isfinite(kappa2)) {
    throw InvalidArgument("loss rates must be finite and >= 0");
  }

  const Matrix id = Matrix::Identity(d, d);
  const Complex minus_i{0.0, -1.0};
  std::vector<Triplet> triplets;
  add_kron(triplets, id, h, minus_i);
  add_kron(triplets, h.transpose(), id, -minus_i);
  for (const auto& [c, kappa] : {std::pair{&a.matrix, kappa1}, std::pair{&b.matrix, kappa2}}) {
    if (kappa == 0.0) continue;
    const Matrix n = c->adjoint() * *c;
    add_kron(triplets, c->conjugate(), *c, kappa);
    add_kron(triplets, id, n, -0.5 * kappa);
    add_kron(triplets, n.transpose(), id, -0.5 * kappa);
  }

  Liouvillian l{SparseMatrix(d * d, d * d), a.basis, kappa1, kappa2, 0.0};
  l.matrix.setFromTriplets(triplets.begin(), triplets.end());
  l.matrix.prune(Complex{}, 0.0);
  if (d > 0) {
    if (h.isApprox(h.adjoint(), 1e-12)) {
      l.hamiltonian_norm = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    } else {
      l.hamiltonian_norm = Eigen::JacobiSVD<Matrix>(h).singularValues()(0);
    }
  }
  return l;
}

namespace {

// Dimension of the numerical nullspace of L, used only to classify failures.
Eigen::Index nullity(const Liouvillian& l) {
  const Eigen::Index n = l.matrix.rows();
  if (l.basis.dim() <= kDirectSteadyStateMaxDim) {
    Eigen::FullPivLU<Matrix> lu(l.dense());
    lu.setThreshold(1e-10);
    return n - lu.rank();
  }
  Eigen::SparseMatrix<Complex, Eigen::ColMajor> cm(l.matrix);
  cm.makeCompressed();
  Eigen::SparseQR<Eigen::SparseMatrix<Complex, Eigen::ColMajor>, Eigen::COLAMDOrdering<int>> qr;
  qr.setPivotThreshold(1e-10);
  qr.compute(cm);
  if (qr.info() != Eigen::Success) return -1;
  return n - qr.rank();
}

[[noreturn]] void fail_singular(const Liouvillian& l, const std::string& what) {
  const Eigen::Index k = nullity(l);
  if (k > 1) {
    throw NonUniqueSteadyState("Liouvillian has a " + std::to_string(k) +
                               "-dimensional nullspace; steady state is not unique");
  }
  throw SolverFailure("steady-state solve failed: " + what);
}

template <typename Solver>
Vector solve_refined(const Solver& solver, const SparseMatrix& augmented, const Vector& rhs, int min_passes = 0) {
  Vector x = solver.solve(rhs);
  for (int pass = 0; pass < 3 && x.allFinite(); ++pass) {
    const Vector r = rhs - augmented * x;
    // Small populations need a componentwise-small residual, not just a small norm.
    if (pass >= min_passes && r.cwiseAbs().maxCoeff() <= 1e-3 * kSteadyStateResidualTol) break;
    x += solver.solve(r);
  }
  return x;
}

}  // namespace

DensityMatrix steady_state(const Liouvillian& l, SteadyStateMethod method) {
  const auto dim = static_cast<Eigen::Index>(l.basis.dim());
  const Eigen::Index n = dim * dim;
  if (l.matrix.rows() != n || l.matrix.cols() != n) {
    throw DimensionMismatch("Liouvillian size does not match its basis");
  }

  // Row 0 is the equation for d rho_00/dt; trace preservation makes it a
  // combination of the other diagonal rows, so it is the one to give up.
  SparseMatrix augmented = l.matrix;
  augmented.prune([](Eigen::Index row, Eigen::Index, const Complex&) { return row != 0; });
  {
    SparseMatrix trace_row(n, n);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) t.emplace_back(0, trace_slot(i, dim), 1.0);
    trace_row.setFromTriplets(t.begin(), t.end());
    augmented += trace_row;
  }
  Vector rhs = Vector::Zero(n);
  rhs(0) = 1.0;

  if (method == SteadyStateMethod::Auto) {
    method = l.basis.dim() <= kDirectSteadyStateMaxDim ? SteadyStateMethod::SparseLU
                                                       : SteadyStateMethod::Iterative;
  }

  using ColMajor = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
  Vector x;
  if (method == SteadyStateMethod::Iterative) {
    ColMajor cm(augmented);
    cm.makeCompressed();
    Eigen::BiCGSTAB<ColMajor, Eigen::IncompleteLUT<Complex>> solver;
    solver.preconditioner().setDroptol(1e-2);
    solver.preconditioner().setFillfactor(10);
    solver.setTolerance(1e-14);
    solver.setMaxIterations(200);
    solver.compute(cm);
    if (solver.info() == Eigen::Success) {
      x = solve_refined(solver, augmented, rhs, 2);
      const bool converged = solver.info() == Eigen::Success && x.allFinite() &&
                             (l.matrix * x).cwiseAbs().maxCoeff() <= 1e-3 * kSteadyStateResidualTol;
      if (!converged) x.resize(0);
    }
    if (x.size() == 0) method = SteadyStateMethod::SparseLU;
  }
  if (method == SteadyStateMethod::DenseLU) {
    Eigen::PartialPivLU<Matrix> lu{Matrix(augmented)};
    const double rcond = lu.rcond();
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio = pivots.minCoeff() / pivots.maxCoeff();
    if (!(rcond > 1e-14) || !(pivot_ratio > 1e-14)) {
      fail_singular(l, "augmented system is singular (rcond " + format_double(rcond) + ")");
    }
    x = solve_refined(lu, augmented, rhs);
  } else if (method == SteadyStateMethod::SparseLU) {
    ColMajor cm(augmented);
    cm.makeCompressed();
    Eigen::SparseLU<ColMajor, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(cm);
    lu.factorize(cm);
    if (lu.info() != Eigen::Success) fail_singular(l, "sparse LU factorization failed: " + lu.lastErrorMessage());
    x = solve_refined(lu, augmented, rhs);
  }
  if (!x.allFinite()) fail_singular(l, "solution contains non-finite entries");

  Matrix rho = unvectorize(x, l.basis.dim());
  rho = (0.5 * (rho + rho.adjoint())).eval();
  const double residual = (l.matrix * vectorize(rho)).cwiseAbs().maxCoeff();
  if (!(residual <= kSteadyStateResidualTol)) {
    throw SolverFailure("steady-state residual " + format_double(residual) + " exceeds " +
                        format_double(kSteadyStateResidualTol));
  }
  return DensityMatrix(std::move(rho), l.basis);
}

double max_stable_step(const Liouvillian& l) {
  const double scale = std::max({l.kappa1, l.kappa2, l.hamiltonian_norm});
  return scale > 0.0 ? 0.01 / scale : std::numeric_limits<double>::infinity();
}

namespace {

using RealSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// L(X^+) = L(X)^+ entrywise in vec form, up to rounding in the assembly.
bool preserves_hermiticity(const SparseMatrix& m, Eigen::Index dim) {
  auto swap = [dim](Eigen::Index v) { return (v % dim) * dim + v / dim; };
  double scale = 0.0;
  for (Eigen::Index k = 0; k < m.nonZeros(); ++k) scale = std::max(scale, std::abs(m.valuePtr()[k]));
  const double tol = 64 * std::numeric_limits<double>::epsilon() * scale;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (std::abs(m.coeff(swap(r), swap(it.col())) - std::conj(it.value())) > tol) return false;
    }
  }
  return true;
}

// Real coordinates of a Hermitian matrix: rho_ii, then (Re, Im) of rho_ij for i < j.
struct HermitianChart {
  Eigen::Index dim;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> entries;  // (i, j) per coordinate, i <= j
  std::vector<bool> imaginary;

  explicit HermitianChart(Eigen::Index d) : dim(d) {
    for (Eigen::Index i = 0; i < d; ++i) {
      entries.emplace_back(i, i);
      imaginary.push_back(false);
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        entries.emplace_back(i, j);
        imaginary.push_back(false);
        entries.emplace_back(i, j);
        imaginary.push_back(true);
      }
    }
  }

  Eigen::Index slot(Eigen::Index i, Eigen::Index j) const { return j * dim + i; }

  Eigen::VectorXd coordinates(const Matrix& rho) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const Complex v = rho(entries[k].first, entries[k].second);
      r(static_cast<Eigen::Index>(k)) = imaginary[k] ? v.imag() : v.real();
    }
    return r;
  }

  Matrix matrix(const Eigen::VectorXd& r) const {
    Matrix rho = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto [i, j] = entries[k];
      const double v = r(static_cast<Eigen::Index>(k));
      if (i == j) {
        rho(i, i) = v;
      } else if (imaginary[k]) {
        rho(i, j) += Complex(0.0, v);
        rho(j, i) -= Complex(0.0, v);
      } else {
        rho(i, j) += v;
        rho(j, i) += v;
      }
    }
    return rho;
  }

  // The restriction of L to Hermitian matrices, as a real matrix.
  RealSparse restrict(const SparseMatrix& l) const {
    const auto n = static_cast<Eigen::Index>(entries.size());
    std::vector<Eigen::Triplet<Complex>> q;
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto [i, j] = entries[static_cast<std::size_t>(k)];
      if (i == j) {
        q.emplace_back(slot(i, i), k, 1.0);
      } else {
        const Complex unit = imaginary[static_cast<std::size_t>(k)] ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
        q.emplace_back(slot(i, j), k, unit);
        q.emplace_back(slot(j, i), k, std::conj(unit));
      }
    }
    SparseMatrix embed(n, n);
    embed.setFromTriplets(q.begin(), q.end());
    const SparseMatrix image = l * embed;

    std::vector<Eigen::Triplet<double>> t;
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto [i, j] = entries[static_cast<std::size_t>(k)];
      const bool im = imaginary[static_cast<std::size_t>(k)];
      for (SparseMatrix::InnerIterator it(image, slot(i, j)); it; ++it) {
        const double v = im ? it.value().imag() : it.value().real();
        if (v != 0.0) t.emplace_back(k, it.col(), v);
      }
    }
    RealSparse r(n, n);
    r.setFromTriplets(t.begin(), t.end());
    return r;
  }
};

template <typename Op, typename Vec, typename Trace>
void rk4(const Op& op, Vec& x, long long steps, double h, const Trace& trace_of) {
  const auto trace0 = trace_of(x);
  Vec k(x.size()), acc(x.size()), tmp(x.size());
  auto check_drift = [&](long long step) {
    const double drift = std::abs(trace_of(x) - trace0);
    if (!(drift <= kTraceDriftTol)) {
      throw StepSizeError("trace drift " + format_double(drift) + " after " + std::to_string(step) +
                          " RK4 steps exceeds " + format_double(kTraceDriftTol));
    }
  };
  for (long long step = 1; step <= steps; ++step) {
    k.noalias() = op * x;
    acc = k;
    tmp = x + (0.5 * h) * k;
    k.noalias() = op * tmp;
    acc += 2.0 * k;
    tmp = x + (0.5 * h) * k;
    k.noalias() = op * tmp;
    acc += 2.0 * k;
    tmp = x + h * k;
    k.noalias() = op * tmp;
    acc += k;
    x += (h / 6.0) * acc;
    if (step % 4096 == 0) check_drift(step);
  }
  check_drift(steps);
}

}  // namespace

DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& l, double t_final, double dt) {
  if (!(rho0.basis() == l.basis)) throw DimensionMismatch("state and Liouvillian bases differ");
  if (!std::isfinite(t_final) || t_final < 0.0) throw InvalidArgument("t_final must be >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
  const double bound = max_stable_step(l);
  if (dt > bound * (1.0 + 1e-12)) {
    throw StepSizeError("dt = " + format_double(dt) + " exceeds the stability bound " + format_double(bound));
  }
  if (t_final == 0.0) return rho0;

  const auto steps = static_cast<long long>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(steps);
  const auto dim = static_cast<Eigen::Index>(l.basis.dim());

  // Hermitian states under a Hermiticity-preserving L stay in a real subspace of half the size.
  if (rho0.matrix() == rho0.matrix().adjoint() && preserves_hermiticity(l.matrix, dim)) {
    const HermitianChart chart(dim);
    const RealSparse op = chart.restrict(l.matrix);
    Eigen::VectorXd x = chart.coordinates(rho0.matrix());
    rk4(op, x, steps, h, [dim](const Eigen::VectorXd& v) { return v.head(dim).sum(); });
    return DensityMatrix(chart.matrix(x), l.basis);
  }

  Vector x = vectorize(rho0.matrix());
  rk4(l.matrix, x, steps, h, [dim](const Vector& v) {
    Complex t{};
    for (Eigen::Index i = 0; i < dim; ++i) t += v(trace_slot(i, dim));
    return t;
  });
  return DensityMatrix(unvectorize(x, l.basis.dim()), l.basis);
}

}  // namespace chi2
