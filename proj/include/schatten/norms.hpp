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

#include <cmath>
#include <limits>
#include <string>

#include "schatten/errors.hpp"
#include "schatten/linalg.hpp"
#include "schatten/summation.hpp"
#include "schatten/types.hpp"

namespace schatten {

/// A Schatten exponent p in [1, inf]. Value-validated at construction;
/// conjugation (p <-> q with 1/p + 1/q = 1) maps 1 <-> inf exactly.
class PExponent {
 public:
  explicit PExponent(double value) : value_(value) {
    // NaN fails this comparison too.
    if (!(value >= 1.0))
      throw InvalidExponent("p must satisfy 1 <= p <= inf, got " +
                            std::to_string(value));
  }

  static PExponent infinity() {
    return PExponent(std::numeric_limits<double>::infinity());
  }

  double value() const { return value_; }
  bool is_one() const { return value_ == 1.0; }
  bool is_infinite() const { return std::isinf(value_); }
  bool is_interior() const { return !is_one() && !is_infinite(); }

  PExponent conjugate() const {
    if (is_one()) return infinity();
    if (is_infinite()) return PExponent(1.0);
    return PExponent(value_ / (value_ - 1.0));
  }

  /// (p-1)/p = 1/q, the exponent carried by the truncation rank.
  double inverse_conjugate() const {
    if (is_one()) return 0.0;
    if (is_infinite()) return 1.0;
    return (value_ - 1.0) / value_;
  }

 private:
  double value_;
};

/// Bounds that interpolate between the trace and operator norms need p
/// strictly between them.
inline void require_interior(PExponent p) {
  if (!p.is_interior())
    throw InvalidExponent("p must satisfy 1 < p < ∞");
}

/// Schatten p-norm from precomputed singular values. Values below
/// tol::sv_zero_rel times the largest are treated as exact zeros, so rank
/// deficiency does not leak noise into small-p norms.
template <typename Scalar>
Scalar norm_from_singular_values(const RealVector<Scalar>& values,
                                 PExponent p) {
  if (values.size() == 0) return Scalar(0);
  const Scalar top = values.maxCoeff();
  if (!(top > Scalar(0))) return Scalar(0);
  if (p.is_infinite()) return top;
  const Scalar cutoff = Scalar(tol::sv_zero_rel) * top;
  CompensatedSum<Scalar> acc;
  if (p.is_one()) {
    for (Index i = 0; i < values.size(); ++i)
      if (values[i] > cutoff) acc += values[i];
    return acc.value();
  }
  for (Index i = 0; i < values.size(); ++i)
    if (values[i] > cutoff) acc += std::pow(values[i], Scalar(p.value()));
  return std::pow(acc.value(), Scalar(1) / Scalar(p.value()));
}

/// Schatten p-norm ||M||_p = (sum_n sigma_n^p)^(1/p); p = inf gives the
/// operator norm, p = 1 the trace norm.
template <typename Derived>
RealScalarOf<Derived> schatten_norm(const Eigen::MatrixBase<Derived>& m,
                                    PExponent p) {
  return norm_from_singular_values<RealScalarOf<Derived>>(singular_values(m),
                                                          p);
}

/// Trace norm shorthand.
template <typename Derived>
RealScalarOf<Derived> trace_norm(const Eigen::MatrixBase<Derived>& m) {
  return schatten_norm(m, PExponent(1.0));
}

/// Matrix trace (complex in general).
template <typename Derived>
std::complex<RealScalarOf<Derived>> trace(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealScalarOf<Derived>;
  using C = std::complex<Real>;
  if (m.rows() != m.cols())
    throw DimensionMismatch("trace: matrix must be square");
  C acc(0, 0);
  for (Index i = 0; i < m.rows(); ++i) acc += C(m(i, i));
  return acc;
}

}  // namespace schatten
