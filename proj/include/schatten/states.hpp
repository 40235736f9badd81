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
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "schatten/bounds.hpp"
#include "schatten/errors.hpp"
#include "schatten/linalg.hpp"
#include "schatten/norms.hpp"
#include "schatten/rng.hpp"
#include "schatten/types.hpp"

namespace schatten {

/// A generated unit-trace-norm operator with its spectral data, the decay
/// envelope its spectrum satisfies (when one exists), and the spectral mass
/// of the infinite-dimensional model that truncation to `dim` discarded.
struct GeneratedState {
  Eigen::MatrixXcd matrix;
  SpectrumXd spectrum;
  std::optional<DecayModel> model;
  double truncation_remainder = 0.0;
};

/// dim x dim matrix of iid standard complex Gaussians (Ginibre ensemble).
inline Eigen::MatrixXcd ginibre_matrix(Index dim, std::uint64_t seed) {
  if (dim < 1)
    throw std::invalid_argument("ginibre_matrix: dim must be >= 1");
  rng::Xoshiro256StarStar gen(seed);
  rng::NormalSampler normal;
  Eigen::MatrixXcd g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      // Sequenced explicitly: argument evaluation order is unspecified.
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = std::complex<double>(re, im);
    }
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// phases absorbed into Q, which removes the sign ambiguity of plain QR.
inline Eigen::MatrixXcd random_unitary(Index dim, std::uint64_t seed) {
  const Eigen::MatrixXcd g = ginibre_matrix(dim, seed);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= a > 0 ? d / a : std::complex<double>(1.0, 0.0);
  }
  return q;
}

namespace detail {

/// Assemble a state from normalized descending weights, optionally
/// conjugated into a random eigenbasis.
inline GeneratedState from_weights(const Eigen::VectorXd& lambda,
                                   std::optional<std::uint64_t> basis_seed,
                                   std::optional<DecayModel> model,
                                   double remainder) {
  const Index dim = lambda.size();
  const Eigen::MatrixXcd u = basis_seed
                                 ? random_unitary(dim, *basis_seed)
                                 : Eigen::MatrixXcd::Identity(dim, dim);
  SpectrumXd spectrum = make_spectrum<double>(
      lambda.cast<std::complex<double>>(), u);
  Eigen::MatrixXcd mat = spectrum.reconstruct();
  mat = ((mat + mat.adjoint()) / 2.0).eval();
  return {std::move(mat), std::move(spectrum), std::move(model), remainder};
}

}  // namespace detail

/// Thermal state of the linear-spectrum Hamiltonian H = diag(0, 1, 2, ...):
/// eigenvalues e^(-beta n) / Z, strictly decreasing. The envelope constant
/// is inflated by the finite-dimensional renormalization,
/// C = (1 - e^(-beta)) / (1 - e^(-beta dim)), so every kept eigenvalue stays
/// dominated; the discarded mass of the infinite model is e^(-beta dim).
inline GeneratedState gibbs_state(
    double beta, Index dim,
    std::optional<std::uint64_t> basis_seed = std::nullopt) {
  if (!(beta > 0) || !std::isfinite(beta))
    throw std::invalid_argument("gibbs_state: beta must be positive");
  if (dim < 1) throw std::invalid_argument("gibbs_state: dim must be >= 1");
  Eigen::VectorXd w(dim);
  CompensatedSum<double> z;
  for (Index n = 0; n < dim; ++n) {
    w[n] = std::exp(-beta * static_cast<double>(n));
    z += w[n];
  }
  const Eigen::VectorXd lambda = w / z.value();
  const double c = (-std::expm1(-beta)) /
                   (-std::expm1(-beta * static_cast<double>(dim)));
  const double remainder = std::exp(-beta * static_cast<double>(dim));
  return detail::from_weights(lambda, basis_seed,
                              DecayModel(ExponentialDecay{c, beta}), remainder);
}

/// State with eigenvalues proportional to (n+1)^(-alpha), alpha > 1. The
/// envelope constant is the finite normalizer 1/S_dim, which dominates the
/// kept eigenvalues exactly; the discarded mass is bounded by the integral
/// tail of the infinite model.
inline GeneratedState power_law_state(
    double alpha, Index dim,
    std::optional<std::uint64_t> basis_seed = std::nullopt) {
  if (!(alpha > 1) || !std::isfinite(alpha))
    throw std::invalid_argument("power_law_state: alpha must exceed 1");
  if (dim < 1)
    throw std::invalid_argument("power_law_state: dim must be >= 1");
  Eigen::VectorXd w(dim);
  CompensatedSum<double> s;
  for (Index n = 0; n < dim; ++n) {
    w[n] = std::pow(static_cast<double>(n + 1), -alpha);
    s += w[n];
  }
  const Eigen::VectorXd lambda = w / s.value();
  const double c_dim = 1.0 / s.value();
  const double t_hat =
      std::pow(static_cast<double>(dim), 1.0 - alpha) / (alpha - 1.0);
  const double remainder = t_hat / (s.value() + t_hat);
  return detail::from_weights(lambda, basis_seed,
                              DecayModel(PowerLawDecay{c_dim, alpha}),
                              remainder);
}

/// Density matrix G G* / tr(G G*) for a Ginibre G: full rank almost surely,
/// unordered spectrum, no decay envelope.
inline GeneratedState random_density_matrix(Index dim, std::uint64_t seed) {
  if (dim < 1)
    throw std::invalid_argument("random_density_matrix: dim must be >= 1");
  const Eigen::MatrixXcd g = ginibre_matrix(dim, seed);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  const double tr = rho.trace().real();
  if (!(tr > 0))
    throw DegenerateNorm("random_density_matrix: trace collapsed to zero");
  rho /= tr;
  SpectrumXd spectrum = hermitian_eig(rho);
  return {std::move(rho), std::move(spectrum), std::nullopt, 0.0};
}

/// Random operator normalized to unit trace norm; Hermitian on request
/// (giving a signed spectrum, like the difference of two states), otherwise
/// genuinely non-normal.
inline Eigen::MatrixXcd random_unit_trace_norm(Index dim, std::uint64_t seed,
                                               bool hermitian) {
  if (dim < 1)
    throw std::invalid_argument("random_unit_trace_norm: dim must be >= 1");
  Eigen::MatrixXcd m = ginibre_matrix(dim, seed);
  if (hermitian) m = ((m + m.adjoint()) / 2.0).eval();
  const double n1 = trace_norm(m);
  if (n1 < 1e-12)
    throw DegenerateNorm("random_unit_trace_norm: trace norm collapsed");
  return m / n1;
}

/// A0 plus unit-p-norm noise of the given magnitude, renormalized back to
/// unit trace norm. The noise direction depends only on (seed, hermitian),
/// so sweeping the magnitude with a fixed seed moves along one ray.
inline Eigen::MatrixXcd perturb_renormalized(const GeneratedState& a0,
                                             double magnitude,
                                             std::uint64_t seed,
                                             bool hermitian,
                                             PExponent noise_norm = PExponent(2.0)) {
  if (!(magnitude > 0) || !std::isfinite(magnitude))
    throw std::invalid_argument(
        "perturb_renormalized: magnitude must be positive");
  Eigen::MatrixXcd e = ginibre_matrix(a0.matrix.rows(), seed);
  if (hermitian) e = ((e + e.adjoint()) / 2.0).eval();
  const double ep = schatten_norm(e, noise_norm);
  if (ep < 1e-12)
    throw DegenerateNorm("perturb_renormalized: noise is numerically zero");
  e /= ep;
  const Eigen::MatrixXcd raw = a0.matrix + magnitude * e;
  const double n1 = trace_norm(raw);
  if (n1 < 1e-12)
    throw DegenerateNorm(
        "perturb_renormalized: perturbed operator has vanishing trace norm");
  return raw / n1;
}

}  // namespace schatten
