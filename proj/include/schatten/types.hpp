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
#include <complex>

#include "schatten/summation.hpp"

namespace schatten {

using Eigen::Index;

template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Vector<Scalar, Eigen::Dynamic>;

/// Real scalar underlying an Eigen expression (double for both MatrixXd and
/// MatrixXcd).
template <typename Derived>
using RealScalarOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/// Tolerances shared across the library, calibrated for unit-trace-norm
/// operators in double precision at dimensions up to a few hundred.
namespace tol {

// Hermiticity deviation ||M - M*||, operator norm, absolute.
inline constexpr double herm = 1e-9;
// Projection idempotence / commutation deviation, operator norm.
inline constexpr double proj = 1e-9;
// Pairwise orthonormality of vector families, max entry of the Gram defect.
inline constexpr double orth = 1e-9;
// Decomposition reconstruction error, relative to the operator scale.
inline constexpr double recon = 1e-8;
// Unit trace-norm normalization checks.
inline constexpr double unit_norm = 1e-8;
// Singular values below this fraction of the largest are exact zeros.
inline constexpr double sv_zero_rel = 1e-14;

}  // namespace tol

/// Spectral decomposition of a normal operator. Eigenvalues are sorted by
/// descending modulus; exact modulus ties break by descending real part,
/// then descending imaginary part. Columns of `eigenvectors` match the
/// eigenvalue order and form an orthonormal family.
///
/// The zero operator is represented by an empty eigenvalue list (its
/// eigenvector matrix keeps dim rows and zero columns), so reconstruct()
/// still knows the ambient dimension.
template <typename Scalar = double>
struct Spectrum {
  using Complex = std::complex<Scalar>;

  ComplexVector<Scalar> eigenvalues;
  ComplexMatrix<Scalar> eigenvectors;

  Index size() const { return eigenvalues.size(); }
  Index dim() const { return eigenvectors.rows(); }

  RealVector<Scalar> moduli() const { return eigenvalues.cwiseAbs(); }

  Scalar trace_norm() const {
    CompensatedSum<Scalar> acc;
    for (Index n = 0; n < eigenvalues.size(); ++n)
      acc += std::abs(eigenvalues[n]);
    return acc.value();
  }

  ComplexMatrix<Scalar> reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
  }
};

/// Canonical decomposition M = sum_n values[n] |left_n><right_n|: singular
/// values descending and non-negative, vector families orthonormal.
template <typename Scalar = double>
struct SingularSpectrum {
  using Complex = std::complex<Scalar>;

  RealVector<Scalar> values;
  ComplexMatrix<Scalar> left_vectors;
  ComplexMatrix<Scalar> right_vectors;

  Index size() const { return values.size(); }

  ComplexMatrix<Scalar> reconstruct() const {
    return left_vectors * values.template cast<Complex>().asDiagonal() *
           right_vectors.adjoint();
  }
};

/// Orthogonal projection P = P* = P^2 with its rank. rank == 0 (the zero
/// projection) and rank == dim (the identity) are both legal.
template <typename Scalar = double>
struct Projection {
  ComplexMatrix<Scalar> matrix;
  Index rank = 0;

  Index dim() const { return matrix.rows(); }
};

using SpectrumXd = Spectrum<double>;
using SingularSpectrumXd = SingularSpectrum<double>;
using ProjectionXd = Projection<double>;

}  // namespace schatten
