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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>

#include "schatten/states.hpp"

using namespace schatten;

TEST_CASE("rng streams are deterministic and decorrelated") {
  rng::Xoshiro256StarStar a(42);
  rng::Xoshiro256StarStar b(42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());

  rng::Xoshiro256StarStar c(43);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs = differs || (a() != c());
  CHECK(differs);

  CHECK(rng::derive_stream(7, 0) != rng::derive_stream(7, 1));
  CHECK(rng::derive_stream(7, 0) != rng::derive_stream(8, 0));
}

TEST_CASE("uniform01 and NormalSampler have sane moments") {
  rng::Xoshiro256StarStar gen(2718);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng::uniform01(gen);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));

  rng::NormalSampler normal;
  double mean = 0.0;
  double sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = normal(gen);
    mean += x;
    sq += x * x;
  }
  mean /= n;
  sq /= n;
  CHECK(std::abs(mean) < 0.05);
  CHECK(sq - mean * mean == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("ginibre_matrix and random_unitary are reproducible") {
  const Eigen::MatrixXcd g1 = ginibre_matrix(5, 11);
  const Eigen::MatrixXcd g2 = ginibre_matrix(5, 11);
  CHECK((g1 - g2).cwiseAbs().maxCoeff() == 0.0);
  CHECK((g1 - ginibre_matrix(5, 12)).cwiseAbs().maxCoeff() > 0.0);
  CHECK(g1.allFinite());

  const Eigen::MatrixXcd u = random_unitary(6, 13);
  CHECK(operator_norm(
            (u * u.adjoint() - Eigen::MatrixXcd::Identity(6, 6)).eval()) <=
        1e-12);
  const Eigen::MatrixXcd u2 = random_unitary(6, 13);
  CHECK((u - u2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gibbs_state at beta = ln 2, dim 3") {
  const double beta = std::log(2.0);
  const GeneratedState st = gibbs_state(beta, 3);
  REQUIRE(st.spectrum.size() == 3);
  CHECK(st.spectrum.eigenvalues(0).real() ==
        doctest::Approx(4.0 / 7.0).epsilon(1e-14));
  CHECK(st.spectrum.eigenvalues(1).real() ==
        doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(st.spectrum.eigenvalues(2).real() ==
        doctest::Approx(1.0 / 7.0).epsilon(1e-14));

  // Without a basis seed the matrix is diagonal.
  Eigen::MatrixXcd off = st.matrix;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(trace_norm(st.matrix) == doctest::Approx(1.0).epsilon(1e-13));

  // The stored envelope: C = (1 - e^-beta)/(1 - e^-(beta dim)), here 4/7,
  // and the dropped weight past the finite spectrum is e^-(beta dim) = 1/8.
  REQUIRE(st.model.has_value());
  const auto& exp_model = std::get<ExponentialDecay>(*st.model);
  CHECK(exp_model.C == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
  CHECK(exp_model.beta == doctest::Approx(beta));
  CHECK(st.truncation_remainder == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("gibbs_state collapses to the ground state at large beta") {
  const GeneratedState frozen = gibbs_state(50.0, 4);
  CHECK(frozen.spectrum.eigenvalues(0).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (Index n = 1; n < 4; ++n)
    CHECK(std::abs(frozen.spectrum.eigenvalues(n)) <= 1e-12);
}

TEST_CASE("gibbs envelope dominates the empirical tails") {
  for (const double beta : {0.3, 0.7, 1.5}) {
    for (const Index dim : {4, 16, 33}) {
      const GeneratedState st = gibbs_state(beta, dim);
      std::vector<double> mods(static_cast<std::size_t>(dim));
      for (Index i = 0; i < dim; ++i)
        mods[static_cast<std::size_t>(i)] = st.spectrum.moduli()(i);
      for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(dim); ++n)
        CHECK(tail_sum(mods, n) <= closed_form_tail(*st.model, n) + 1e-14);
    }
  }
}

TEST_CASE("power_law_state at alpha = 2, dim 2") {
  const GeneratedState st = power_law_state(2.0, 2);
  REQUIRE(st.spectrum.size() == 2);
  CHECK(st.spectrum.eigenvalues(0).real() ==
        doctest::Approx(0.8).epsilon(1e-14));
  CHECK(st.spectrum.eigenvalues(1).real() ==
        doctest::Approx(0.2).epsilon(1e-14));
  REQUIRE(st.model.has_value());
  const auto& pl = std::get<PowerLawDecay>(*st.model);
  CHECK(pl.C == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(pl.alpha == 2.0);
  CHECK(st.truncation_remainder > 0.0);
  CHECK(st.truncation_remainder < 1.0);
}

TEST_CASE("power_law_state envelope dominates the empirical tails") {
  for (const double alpha : {1.2, 2.0, 3.5}) {
    for (const Index dim : {8, 32}) {
      const GeneratedState st = power_law_state(alpha, dim);
      std::vector<double> mods(static_cast<std::size_t>(dim));
      for (Index i = 0; i < dim; ++i)
        mods[static_cast<std::size_t>(i)] = st.spectrum.moduli()(i);
      for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(dim); ++n)
        CHECK(tail_sum(mods, n) <= closed_form_tail(*st.model, n) + 1e-14);
    }
  }
}

TEST_CASE("seeded eigenbases keep the spectrum and normalize") {
  const GeneratedState st = gibbs_state(0.8, 6, 99);
  CHECK(trace_norm(st.matrix) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm((st.matrix - st.matrix.adjoint()).eval()) <= 1e-13);
  // Same weights as the diagonal version.
  const GeneratedState diag = gibbs_state(0.8, 6);
  for (Index i = 0; i < 6; ++i)
    CHECK(st.spectrum.eigenvalues(i).real() ==
          doctest::Approx(diag.spectrum.eigenvalues(i).real()).epsilon(1e-13));
  // And the matrix really has those eigenvalues.
  const SpectrumXd recovered = hermitian_eig(st.matrix);
  for (Index i = 0; i < 6; ++i)
    CHECK(recovered.eigenvalues(i).real() ==
          doctest::Approx(st.spectrum.eigenvalues(i).real()).epsilon(1e-11));
  // Off-diagonal mass shows the basis rotation took effect.
  Eigen::MatrixXcd off = st.matrix;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("random_density_matrix is a density matrix") {
  const GeneratedState st = random_density_matrix(7, 123);
  CHECK(operator_norm((st.matrix - st.matrix.adjoint()).eval()) <= 1e-13);
  CHECK(std::abs(trace(st.matrix) - std::complex<double>(1.0)) <= 1e-12);
  for (Index i = 0; i < st.spectrum.size(); ++i)
    CHECK(st.spectrum.eigenvalues(i).real() >= -1e-13);
  CHECK(trace_norm(st.matrix) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(st.model.has_value());
}

TEST_CASE("random_unit_trace_norm honors the hermitian flag") {
  const Eigen::MatrixXcd h = random_unit_trace_norm(5, 3, true);
  CHECK(operator_norm((h - h.adjoint()).eval()) <= 1e-13);
  CHECK(trace_norm(h) == doctest::Approx(1.0).epsilon(1e-12));

  const Eigen::MatrixXcd g = random_unit_trace_norm(5, 3, false);
  CHECK(trace_norm(g) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm((g - g.adjoint()).eval()) > 1e-3);
}

TEST_CASE("perturb_renormalized keeps unit trace norm and scales") {
  const GeneratedState a0 = gibbs_state(1.2, 8, 4);
  for (const double mag : {1e-1, 1e-3, 1e-6}) {
    const Eigen::MatrixXcd a = perturb_renormalized(a0, mag, 17, true);
    CHECK(trace_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm((a - a.adjoint()).eval()) <= 1e-12);
    const double dist = schatten_norm((a - a0.matrix).eval(), PExponent(2.0));
    CHECK(dist <= 3.0 * mag);
    CHECK(dist >= mag / 10.0);
  }

  // Non-Hermitian noise leaves Hermiticity behind.
  const Eigen::MatrixXcd a = perturb_renormalized(a0, 1e-2, 17, false);
  CHECK(trace_norm(a) == doctest::Approx(1.0).epsilon(1e-12));

  // Magnitudes must be strictly positive.
  CHECK_THROWS_AS(perturb_renormalized(a0, 0.0, 17, true),
                  std::invalid_argument);
}

TEST_CASE("state generators validate their inputs") {
  CHECK_THROWS_AS(gibbs_state(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(gibbs_state(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_law_state(1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(power_law_state(2.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_density_matrix(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ginibre_matrix(0, 1), std::invalid_argument);
}
