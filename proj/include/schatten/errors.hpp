// Copyright 2026 The schatten authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace schatten {

/// Base class of every exception thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The input matrix deviates from M = M* beyond tolerance.
struct NotHermitian : Error {
  using Error::Error;
};

/// An iterative eigen/SVD solver failed to converge.
struct NoConvergence : Error {
  using Error::Error;
};

/// Supplied vectors are not orthonormal within tolerance.
struct NotOrthonormal : Error {
  using Error::Error;
};

/// Operands have incompatible dimensions.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A projection family violates pairwise orthogonality.
struct NotMutuallyOrthogonal : Error {
  using Error::Error;
};

/// The requested computation is undefined for this decay model.
struct UnsupportedModel : Error {
  using Error::Error;
};

/// p outside the admissible range for the requested bound.
struct InvalidExponent : Error {
  using Error::Error;
};

/// An operator that must have unit trace norm does not.
struct NotNormalized : Error {
  using Error::Error;
};

/// A renormalization denominator collapsed to numerical zero.
struct DegenerateNorm : Error {
  using Error::Error;
};

/// An inequality that holds mathematically was violated far beyond numerical
/// noise; this always indicates an implementation bug, never input noise.
struct MathematicalViolation : Error {
  using Error::Error;
};

/// A file could not be opened, read or written.
struct IoError : Error {
  using Error::Error;
};

/// A file exists but its contents do not parse or validate.
struct FileFormatError : Error {
  using Error::Error;
};

}  // namespace schatten
