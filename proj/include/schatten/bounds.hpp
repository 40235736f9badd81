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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "schatten/errors.hpp"
#include "schatten/linalg.hpp"
#include "schatten/norms.hpp"
#include "schatten/summation.hpp"
#include "schatten/types.hpp"

namespace schatten {

/// Envelope |mu_n| <= C (n+1)^(-alpha) with alpha > 1 (n counted from 0).
struct PowerLawDecay {
  double C = 1.0;
  double alpha = 2.0;
};

/// Envelope |mu_n| <= C e^(-beta n) with beta > 0.
struct ExponentialDecay {
  double C = 1.0;
  double beta = 1.0;
};

/// Explicit eigenvalue moduli, descending, zeros excluded.
struct EmpiricalDecay {
  std::vector<double> moduli;
};

using DecayModel = std::variant<PowerLawDecay, ExponentialDecay, EmpiricalDecay>;

inline void validate(const DecayModel& model) {
  if (const auto* pl = std::get_if<PowerLawDecay>(&model)) {
    if (!(pl->C > 0) || !std::isfinite(pl->C))
      throw std::invalid_argument("power-law model: C must be positive");
    if (!(pl->alpha > 1) || !std::isfinite(pl->alpha))
      throw std::invalid_argument("power-law model: alpha must exceed 1");
  } else if (const auto* ex = std::get_if<ExponentialDecay>(&model)) {
    if (!(ex->C > 0) || !std::isfinite(ex->C))
      throw std::invalid_argument("exponential model: C must be positive");
    if (!(ex->beta > 0) || !std::isfinite(ex->beta))
      throw std::invalid_argument("exponential model: beta must be positive");
  } else {
    const auto& m = std::get<EmpiricalDecay>(model).moduli;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!(m[i] >= 0) || !std::isfinite(m[i]))
        throw std::invalid_argument(
            "empirical model: moduli must be finite and non-negative");
      if (i > 0 && m[i] > m[i - 1])
        throw std::invalid_argument("empirical model: moduli must be descending");
    }
  }
}

/// Sum of moduli[n..]; zero once n passes the end. Accumulated from the
/// small end with compensation, so steep tails keep relative accuracy.
inline double tail_sum(std::span<const double> moduli, std::uint64_t n) {
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (!(moduli[i] >= 0) || !std::isfinite(moduli[i]))
      throw std::invalid_argument(
          "tail_sum: moduli must be finite and non-negative");
    if (i > 0 && moduli[i] > moduli[i - 1])
      throw std::invalid_argument("tail_sum: moduli must be descending");
  }
  CompensatedSum<double> acc;
  for (std::size_t i = moduli.size(); i-- > 0;) {
    if (i < n) break;
    acc += moduli[i];
  }
  return acc.value();
}

/// Total spectral mass of the model: sum over all n of the envelope. The
/// power-law envelope has a finite sum but no closed form, so it reports
/// +inf here; callers that need a tail at N = 0 clamp against the known
/// trace-norm of the operator instead.
inline double total_mass(const DecayModel& model) {
  if (const auto* ex = std::get_if<ExponentialDecay>(&model))
    return ex->C / (-std::expm1(-ex->beta));
  if (const auto* emp = std::get_if<EmpiricalDecay>(&model))
    return tail_sum(emp->moduli, 0);
  return std::numeric_limits<double>::infinity();
}

/// Closed-form envelope tail for N >= 1:
///   power law:   C N^(1-alpha) / (alpha - 1)   (integral comparison)
///   exponential: C e^(-beta N) / (1 - e^(-beta))  (geometric series)
/// Both dominate the summed envelope tail from N on. The empirical model has
/// no closed form; use tail_sum.
inline double closed_form_tail(const DecayModel& model, std::uint64_t n) {
  validate(model);
  if (n < 1)
    throw std::invalid_argument(
        "closed_form_tail: defined for N >= 1; at N = 0 use the total mass");
  if (const auto* pl = std::get_if<PowerLawDecay>(&model))
    return pl->C / (pl->alpha - 1.0) *
           std::pow(static_cast<double>(n), 1.0 - pl->alpha);
  if (const auto* ex = std::get_if<ExponentialDecay>(&model))
    return ex->C * std::exp(-ex->beta * static_cast<double>(n)) /
           (-std::expm1(-ex->beta));
  throw UnsupportedModel(
      "closed_form_tail: empirical models have no closed form; use tail_sum");
}

/// One evaluation of the trace-norm error bound
///   ||A0 - A||_1 <= 3 N^((p-1)/p) ||A0 - A||_p + 2 sum_{n>=N} |mu_n(A0)|
/// at a fixed truncation rank N. bound == truncation_term + tail_term by
/// construction.
struct Certificate {
  PExponent p;
  double p_error = 0.0;
  std::uint64_t truncation_rank = 0;
  double truncation_term = 0.0;
  double tail_term = 0.0;
  double bound = 0.0;
  std::optional<DecayModel> tail_source;
};

inline Certificate theorem1_bound(double p_error, PExponent p, std::uint64_t n,
                                  double tail) {
  require_interior(p);
  if (!(p_error >= 0) || !std::isfinite(p_error))
    throw std::invalid_argument("theorem1_bound: p_error must be >= 0");
  if (!(tail >= 0) || !std::isfinite(tail))
    throw std::invalid_argument("theorem1_bound: tail must be >= 0");
  const double trunc =
      3.0 * std::pow(static_cast<double>(n), p.inverse_conjugate()) * p_error;
  return Certificate{p,     p_error,         n,           trunc,
                     2.0 * tail, trunc + 2.0 * tail, std::nullopt};
}

namespace detail {

/// Spectral tail of a model at rank N. At N = 0 the tail is the whole trace
/// norm; operators entering the bound are unit-normalized, so the exact
/// value is min(1, total model mass).
inline double model_tail_at(const DecayModel& model, std::uint64_t n) {
  if (const auto* emp = std::get_if<EmpiricalDecay>(&model))
    return tail_sum(emp->moduli, n);
  if (n == 0) return std::min(1.0, total_mass(model));
  return closed_form_tail(model, n);
}

}  // namespace detail

/// Minimize the certificate bound over N in {0, ..., n_max}. Empirical
/// models are scanned exhaustively (tails vanish past the spectrum length,
/// so larger N only adds rank). Closed-form objectives are unimodal in N:
/// up to a million candidates they are scanned outright, beyond that the
/// minimum is bracketed and a window around it scanned. Ties resolve to the
/// smallest N.
inline Certificate optimal_certificate(double p_error, PExponent p,
                                       const DecayModel& model,
                                       std::uint64_t n_max) {
  require_interior(p);
  validate(model);
  if (!(p_error >= 0) || !std::isfinite(p_error))
    throw std::invalid_argument("optimal_certificate: p_error must be >= 0");
  if (n_max < 1)
    throw std::invalid_argument("optimal_certificate: n_max must be >= 1");

  const double inv_q = p.inverse_conjugate();
  const auto bound_at = [&](std::uint64_t n) {
    return 3.0 * std::pow(static_cast<double>(n), inv_q) * p_error +
           2.0 * detail::model_tail_at(model, n);
  };

  std::uint64_t hi = n_max;
  if (const auto* emp = std::get_if<EmpiricalDecay>(&model))
    hi = std::min<std::uint64_t>(n_max, emp->moduli.size());

  std::uint64_t best_n = 0;
  double best = std::numeric_limits<double>::infinity();
  constexpr std::uint64_t kExhaustiveLimit = 1'000'000;
  if (hi <= kExhaustiveLimit) {
    for (std::uint64_t n = 0; n <= hi; ++n) {
      const double b = bound_at(n);
      if (b < best) {
        best = b;
        best_n = n;
      }
    }
  } else {
    std::uint64_t lo = 0;
    std::uint64_t up = hi;
    while (up - lo > 64) {
      const std::uint64_t m1 = lo + (up - lo) / 3;
      const std::uint64_t m2 = up - (up - lo) / 3;
      if (bound_at(m1) <= bound_at(m2))
        up = m2;
      else
        lo = m1;
    }
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t n = 0; n <= 64; ++n) candidates.push_back(n);
    for (std::uint64_t n = lo; n <= up; ++n) candidates.push_back(n);
    candidates.push_back(hi);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    for (const std::uint64_t n : candidates) {
      const double b = bound_at(n);
      if (b < best) {
        best = b;
        best_n = n;
      }
    }
  }

  const double tail = detail::model_tail_at(model, best_n);
  const double trunc =
      3.0 * std::pow(static_cast<double>(best_n), inv_q) * p_error;
  return Certificate{p,     p_error,         best_n,      trunc,
                     2.0 * tail, trunc + 2.0 * tail, model};
}

/// Smallest N with spectral tail strictly below eps. Returned as a double:
/// closed-form ranks can exceed what fits in 64-bit integers (steep
/// accuracy targets on slowly decaying spectra), and the value is only ever
/// consumed as N^(1/q) afterwards. Below 2^53 the result is exact.
inline double n_epsilon(const DecayModel& model, double eps) {
  validate(model);
  if (!(eps > 0) || !std::isfinite(eps))
    throw std::invalid_argument("n_epsilon: eps must be positive");

  if (const auto* emp = std::get_if<EmpiricalDecay>(&model)) {
    const auto& m = emp->moduli;
    std::vector<double> suffix(m.size() + 1, 0.0);
    CompensatedSum<double> acc;
    for (std::size_t i = m.size(); i-- > 0;) {
      acc += m[i];
      suffix[i] = acc.value();
    }
    for (std::size_t n = 0; n <= m.size(); ++n)
      if (suffix[n] < eps) return static_cast<double>(n);
    return static_cast<double>(m.size());
  }

  if (total_mass(model) < eps) return 0.0;
  double n = 1.0;
  if (const auto* ex = std::get_if<ExponentialDecay>(&model)) {
    const double x =
        std::log(ex->C / (eps * (-std::expm1(-ex->beta)))) / ex->beta;
    n = std::max(1.0, std::floor(x) + 1.0);
  } else {
    const auto& pl = std::get<PowerLawDecay>(model);
    const double x =
        std::pow(pl.C / ((pl.alpha - 1.0) * eps), 1.0 / (pl.alpha - 1.0));
    n = std::max(1.0, std::floor(x) + 1.0);
  }
  // Fix rounding of the analytic crossing point while integers are exact.
  if (n < 9.007199254740992e15) {
    for (int i = 0;
         i < 4 && closed_form_tail(model, static_cast<std::uint64_t>(n)) >= eps;
         ++i)
      n += 1.0;
    for (int i = 0; i < 4 && n > 1.0 &&
                    closed_form_tail(
                        model, static_cast<std::uint64_t>(n) - 1) < eps;
         ++i)
      n -= 1.0;
  }
  return n;
}

/// Error bound in terms of the p-norm error alone:
///   (3 N(eps)^((p-1)/p) + 2) eps   with   eps = ||A0 - A||_p.
inline double corollary2_bound(double p_error, PExponent p,
                               const DecayModel& model) {
  require_interior(p);
  if (!(p_error > 0) || !std::isfinite(p_error))
    throw std::invalid_argument("corollary2_bound: p_error must be positive");
  const double n = n_epsilon(model, p_error);
  return (3.0 * std::pow(n, p.inverse_conjugate()) + 2.0) * p_error;
}

/// Moduli of the nonzero eigenvalues (relative cutoff), descending.
inline std::vector<double> nonzero_moduli(const SpectrumXd& spectrum) {
  std::vector<double> out;
  if (spectrum.size() == 0) return out;
  const RealVector<double> mods = spectrum.moduli();
  const double cutoff = tol::sv_zero_rel * mods.maxCoeff();
  for (Index n = 0; n < mods.size(); ++n)
    if (mods[n] > cutoff) out.push_back(mods[n]);
  return out;
}

/// Certificate for a concrete pair (A0 given spectrally, A given as a
/// matrix), both unit trace norm, along with the exact errors for
/// comparison.
struct CertifyExactResult {
  Certificate certificate;
  double true_1_error = 0.0;
  double p_error = 0.0;
};

inline CertifyExactResult certify_exact(const SpectrumXd& a0,
                                        const Eigen::MatrixXcd& a,
                                        PExponent p) {
  require_interior(p);
  if (a.rows() != a.cols())
    throw DimensionMismatch("certify_exact: A must be square");
  if (a0.dim() != a.rows())
    throw DimensionMismatch("certify_exact: operator dimensions differ");
  if (!a.allFinite())
    throw std::invalid_argument("certify_exact: A has non-finite entries");

  if (std::abs(a0.trace_norm() - 1.0) > tol::unit_norm)
    throw NotNormalized("certify_exact: ||A0||_1 must equal 1");
  const RealVector<double> sv_a = singular_values(a);
  if (std::abs(norm_from_singular_values(sv_a, PExponent(1.0)) - 1.0) >
      tol::unit_norm)
    throw NotNormalized("certify_exact: ||A||_1 must equal 1");

  const Eigen::MatrixXcd diff = a0.reconstruct() - a;
  const RealVector<double> sv = singular_values(diff);
  const double p_error = norm_from_singular_values(sv, p);
  const double true_1 = norm_from_singular_values(sv, PExponent(1.0));

  EmpiricalDecay tail_model{nonzero_moduli(a0)};
  const std::uint64_t n_max =
      std::max<std::uint64_t>(1, tail_model.moduli.size());
  Certificate cert =
      optimal_certificate(p_error, p, DecayModel(tail_model), n_max);
  return {std::move(cert), true_1, p_error};
}

}  // namespace schatten
