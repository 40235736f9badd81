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
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "schatten/errors.hpp"
#include "schatten/types.hpp"

namespace schatten {

namespace detail {

/// Strict ordering: descending modulus, exact ties by descending real part,
/// then descending imaginary part. Deterministic for any input.
template <typename Scalar>
bool spectral_less(const std::complex<Scalar>& a,
                   const std::complex<Scalar>& b) {
  const Scalar ma = std::abs(a);
  const Scalar mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

template <typename Derived>
void require_square_finite(const Eigen::MatrixBase<Derived>& m,
                           const char* op) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(op) + ": matrix must be square");
  if (m.rows() < 1)
    throw std::invalid_argument(std::string(op) + ": dimension must be >= 1");
  if (!m.allFinite())
    throw std::invalid_argument(std::string(op) +
                                ": matrix has non-finite entries");
}

}  // namespace detail

/// Largest singular value, i.e. the operator (uniform) norm.
template <typename Derived>
RealScalarOf<Derived> operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = RealScalarOf<Derived>;
  using C = std::complex<Real>;
  if (m.size() == 0) return Real(0);
  if (!m.allFinite())
    throw std::invalid_argument("operator_norm: matrix has non-finite entries");
  ComplexMatrix<Real> mat = m.template cast<C>();
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(mat);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : Real(0);
}

/// Singular values of a finite matrix, descending.
template <typename Derived>
RealVector<RealScalarOf<Derived>> singular_values(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = RealScalarOf<Derived>;
  using C = std::complex<Real>;
  if (!m.allFinite())
    throw std::invalid_argument(
        "singular_values: matrix has non-finite entries");
  ComplexMatrix<Real> mat = m.template cast<C>();
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(mat);
  if (svd.info() != Eigen::Success)
    throw NoConvergence("singular_values: SVD did not converge");
  return svd.singularValues();
}

/// Full canonical decomposition M = sum_n values[n] left_n right_n^*.
template <typename Derived>
SingularSpectrum<RealScalarOf<Derived>> singular_spectrum(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = RealScalarOf<Derived>;
  using C = std::complex<Real>;
  if (!m.allFinite())
    throw std::invalid_argument(
        "singular_spectrum: matrix has non-finite entries");
  ComplexMatrix<Real> mat = m.template cast<C>();
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(
      mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NoConvergence("singular_spectrum: SVD did not converge");
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

/// Eigendecomposition of a Hermitian matrix, sorted by descending eigenvalue
/// modulus. Rejects inputs with ||M - M*|| beyond tol::herm. The exact zero
/// matrix yields the empty spectrum.
template <typename Derived>
Spectrum<RealScalarOf<Derived>> hermitian_eig(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = RealScalarOf<Derived>;
  using C = std::complex<Real>;
  detail::require_square_finite(m, "hermitian_eig");
  ComplexMatrix<Real> mat = m.template cast<C>();
  if (operator_norm((mat - mat.adjoint()).eval()) > Real(tol::herm))
    throw NotHermitian("hermitian_eig: ||M - M*|| exceeds tolerance");
  if (mat.cwiseAbs().maxCoeff() == Real(0)) {
    Spectrum<Real> empty;
    empty.eigenvalues.resize(0);
    empty.eigenvectors.resize(mat.rows(), 0);
    return empty;
  }
  const ComplexMatrix<Real> sym = ((mat + mat.adjoint()) / Real(2)).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eig: eigensolver did not converge");

  const Index n = mat.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  const auto& vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Index i, Index j) {
    return detail::spectral_less(C(vals(i), Real(0)), C(vals(j), Real(0)));
  });

  Spectrum<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = C(vals(order[static_cast<std::size_t>(k)]), Real(0));
    out.eigenvectors.col(k) =
        solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// |M| = (M*M)^(1/2), assembled from the singular value decomposition and
/// re-symmetrized against roundoff.
template <typename Derived>
ComplexMatrix<RealScalarOf<Derived>> modulus(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = RealScalarOf<Derived>;
  using C = std::complex<Real>;
  detail::require_square_finite(m, "modulus");
  ComplexMatrix<Real> mat = m.template cast<C>();
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(mat, Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NoConvergence("modulus: SVD did not converge");
  const ComplexMatrix<Real> v = svd.matrixV();
  const ComplexMatrix<Real> r =
      v * svd.singularValues().template cast<C>().asDiagonal() * v.adjoint();
  return ((r + r.adjoint()) / Real(2)).eval();
}

/// Whether ||MM* - M*M|| <= tolerance * ||M||^2 (operator norms). The zero
/// matrix is normal.
template <typename Derived>
bool is_normal(const Eigen::MatrixBase<Derived>& m,
               RealScalarOf<Derived> tolerance) {
  using Real = RealScalarOf<Derived>;
  using C = std::complex<Real>;
  detail::require_square_finite(m, "is_normal");
  if (!(tolerance > Real(0)))
    throw std::invalid_argument("is_normal: tolerance must be positive");
  ComplexMatrix<Real> mat = m.template cast<C>();
  const Real scale = operator_norm(mat);
  const Real dev =
      operator_norm((mat * mat.adjoint() - mat.adjoint() * mat).eval());
  return dev <= tolerance * scale * scale;
}

/// P = B B* for a matrix B whose columns are orthonormal; rank is the column
/// count. A dim x 0 matrix gives the zero projection.
template <typename Scalar>
Projection<Scalar> projection_from_columns(const ComplexMatrix<Scalar>& basis) {
  if (basis.rows() < 1)
    throw std::invalid_argument(
        "projection_from_columns: ambient dimension must be >= 1");
  if (!basis.allFinite())
    throw std::invalid_argument(
        "projection_from_columns: non-finite entries");
  const Index k = basis.cols();
  if (k > 0) {
    const ComplexMatrix<Scalar> gram = basis.adjoint() * basis;
    const Scalar dev =
        (gram - ComplexMatrix<Scalar>::Identity(k, k)).cwiseAbs().maxCoeff();
    if (dev > Scalar(tol::orth))
      throw NotOrthonormal(
          "projection_from_columns: columns are not orthonormal");
  }
  ComplexMatrix<Scalar> p = basis * basis.adjoint();
  p = ((p + p.adjoint()) / Scalar(2)).eval();
  return {std::move(p), k};
}

/// Same as projection_from_columns, for a list of vectors in a dim-dimensional
/// space. The dimension must be passed explicitly so the empty list still
/// produces a zero projection of the right size.
template <typename Scalar>
Projection<Scalar> projection_from_vectors(
    const std::vector<ComplexVector<Scalar>>& vectors, Index dim) {
  if (dim < 1)
    throw std::invalid_argument("projection_from_vectors: dim must be >= 1");
  ComplexMatrix<Scalar> basis(dim, static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim)
      throw DimensionMismatch(
          "projection_from_vectors: vector length differs from dim");
    basis.col(static_cast<Index>(i)) = vectors[i];
  }
  return projection_from_columns<Scalar>(basis);
}

/// Validated spectral data supplied directly (eigenvalues plus orthonormal
/// eigenvectors), sorted into the canonical descending-modulus order.
template <typename Scalar>
Spectrum<Scalar> make_spectrum(const ComplexVector<Scalar>& eigenvalues,
                               const ComplexMatrix<Scalar>& eigenvectors) {
  if (eigenvectors.cols() != eigenvalues.size())
    throw DimensionMismatch(
        "make_spectrum: eigenvector count differs from eigenvalue count");
  if (eigenvectors.rows() < 1)
    throw std::invalid_argument("make_spectrum: ambient dimension must be >= 1");
  if (!eigenvalues.allFinite() || !eigenvectors.allFinite())
    throw std::invalid_argument("make_spectrum: non-finite entries");
  const Index k = eigenvectors.cols();
  if (k > 0) {
    const ComplexMatrix<Scalar> gram = eigenvectors.adjoint() * eigenvectors;
    const Scalar dev =
        (gram - ComplexMatrix<Scalar>::Identity(k, k)).cwiseAbs().maxCoeff();
    if (dev > Scalar(tol::orth))
      throw NotOrthonormal("make_spectrum: eigenvectors are not orthonormal");
  }

  std::vector<Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(), [&](Index i, Index j) {
    return detail::spectral_less(eigenvalues(i), eigenvalues(j));
  });

  Spectrum<Scalar> out;
  out.eigenvalues.resize(k);
  out.eigenvectors.resize(eigenvectors.rows(), k);
  for (Index i = 0; i < k; ++i) {
    out.eigenvalues(i) = eigenvalues(order[static_cast<std::size_t>(i)]);
    out.eigenvectors.col(i) =
        eigenvectors.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace schatten
