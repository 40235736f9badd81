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

#include <Eigen/Dense>
#include <vector>

#include "schatten/errors.hpp"
#include "schatten/linalg.hpp"
#include "schatten/norms.hpp"
#include "schatten/types.hpp"

namespace schatten {

/// Two-sided compression P A P.
template <typename Scalar, typename Derived>
ComplexMatrix<Scalar> compress(const Projection<Scalar>& p,
                               const Eigen::MatrixBase<Derived>& a) {
  using C = std::complex<Scalar>;
  if (a.rows() != a.cols())
    throw DimensionMismatch("compress: operator must be square");
  if (p.dim() != a.rows())
    throw DimensionMismatch("compress: projection and operator dimensions differ");
  if (!a.allFinite())
    throw std::invalid_argument("compress: operator has non-finite entries");
  ComplexMatrix<Scalar> am = a.template cast<C>();
  return p.matrix * am * p.matrix;
}

/// Pinching sum_i P_i A P_i for a pairwise orthogonal projection family.
/// The family need not resolve the identity; missing blocks simply drop out.
template <typename Scalar, typename Derived>
ComplexMatrix<Scalar> pinch(const Eigen::MatrixBase<Derived>& a,
                            const std::vector<Projection<Scalar>>& family) {
  using C = std::complex<Scalar>;
  if (a.rows() != a.cols())
    throw DimensionMismatch("pinch: operator must be square");
  if (!a.allFinite())
    throw std::invalid_argument("pinch: operator has non-finite entries");
  for (const auto& p : family)
    if (p.dim() != a.rows())
      throw DimensionMismatch("pinch: projection dimension differs from operator");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Scalar dev =
          operator_norm((family[i].matrix * family[j].matrix).eval());
      if (dev > Scalar(tol::proj))
        throw NotMutuallyOrthogonal(
            "pinch: projections are not pairwise orthogonal");
    }
  ComplexMatrix<Scalar> am = a.template cast<C>();
  ComplexMatrix<Scalar> out = ComplexMatrix<Scalar>::Zero(a.rows(), a.cols());
  for (const auto& p : family) out += p.matrix * am * p.matrix;
  return out;
}

/// The two sides of the corner-splitting inequality
/// ||PAP||_1 + ||QAQ||_1 <= ||A||_1 with Q = 1 - P, plus whether P commutes
/// with A within tolerance (the case where equality is guaranteed).
template <typename Scalar = double>
struct SplitBound {
  Scalar lhs = 0;
  Scalar rhs = 0;
  bool commuting = false;
};

template <typename Scalar, typename Derived>
SplitBound<Scalar> split_bound_check(const Eigen::MatrixBase<Derived>& a,
                                     const Projection<Scalar>& p) {
  using C = std::complex<Scalar>;
  if (a.rows() != a.cols())
    throw DimensionMismatch("split_bound_check: operator must be square");
  if (p.dim() != a.rows())
    throw DimensionMismatch(
        "split_bound_check: projection and operator dimensions differ");
  if (!a.allFinite())
    throw std::invalid_argument(
        "split_bound_check: operator has non-finite entries");
  ComplexMatrix<Scalar> am = a.template cast<C>();
  const ComplexMatrix<Scalar> q =
      ComplexMatrix<Scalar>::Identity(a.rows(), a.rows()) - p.matrix;
  const ComplexMatrix<Scalar> pap = p.matrix * am * p.matrix;
  const ComplexMatrix<Scalar> qaq = q * am * q;
  SplitBound<Scalar> out;
  out.lhs = trace_norm(pap) + trace_norm(qaq);
  out.rhs = trace_norm(am);
  out.commuting =
      operator_norm((p.matrix * am - am * p.matrix).eval()) <= Scalar(tol::proj);
  return out;
}

}  // namespace schatten
