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

#include <stdexcept>
#include <string>

namespace chi2 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad cutoff, negative rate, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two operands live on incompatible Fock spaces or superoperator sizes.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A correlation function was requested for a mode with (numerically) zero
/// occupation, i.e. the 0/0 vacuum case.
class UndefinedStatistics : public Error {
 public:
  using Error::Error;
};

/// A linear solve failed or did not meet its residual bound.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// The Liouvillian has more than one stationary state.
class NonUniqueSteadyState : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

/// Time step too large for the integrator, or trace drift exceeded its bound.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace chi2
