// Copyright 2026 The twinhs developers
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
#include <vector>

namespace twinhs {

/// Eigensolver / SVD non-convergence or a failed internal verification.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix that was required to be a density operator is not one.
/// `diagnostics` carries the offending spectrum (or Bell weights) so the
/// CLI can print the violated values.
struct NotAStateError : std::invalid_argument {
  NotAStateError(const std::string& msg, std::vector<double> diag = {})
      : std::invalid_argument(msg), diagnostics(std::move(diag)) {}
  std::vector<double> diagnostics;
};

/// A pair offered as twins fails the twin relation (mismatched detectable
/// spectra, failed biorthogonality, residual too large).
struct NotATwinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A subspace handed to the invariant-basis construction is not invariant
/// under the supplied antilinear map.
struct InvariantViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation that requires strong twins was called with a weak or
/// partially strong pair.
struct StrengthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The joint outcome distribution of a supposed twin pair is not a
/// bijective (perfectly correlated) table at the requested tolerance.
struct NotPerfectlyCorrelatedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace twinhs
