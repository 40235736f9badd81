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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schatten/bounds.hpp"
#include "schatten/errors.hpp"
#include "schatten/linalg.hpp"
#include "schatten/norms.hpp"
#include "schatten/pinching.hpp"
#include "schatten/states.hpp"
#include "schatten/types.hpp"

namespace schatten {

struct CampaignConfig {
  int trials = 1000;
  std::vector<Index> dims = {2, 4, 8, 16};
  std::vector<double> p_grid = {1.25, 1.5, 2.0, 3.0, 5.0};
  std::uint64_t seed = 0;
  double inequality_tol = 1e-9;
  // Equality checks are relative to the operator's trace norm.
  double equality_tol = 1e-8;
  // A violation this deep is an implementation bug; the campaign aborts.
  double abort_threshold = 1e-6;
};

struct Violation {
  std::string digest;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
};

struct VerificationReport {
  std::string campaign;
  int trials = 0;
  std::uint64_t checks = 0;
  std::vector<Violation> violations;
  // Most negative scale-normalized slack seen; positive when every check
  // held with margin.
  double min_slack = 0.0;
  CampaignConfig config;
  double elapsed_seconds = 0.0;

  bool passed() const { return violations.empty(); }
};

/// One row of a sweep: the swept variable (perturbation magnitude or target
/// accuracy eps), the chosen truncation rank and the bound decomposition.
/// true_error is present only when a concrete pair was available.
struct SweepRow {
  double swept = 0.0;
  double truncation_rank = 0.0;
  double truncation_term = 0.0;
  double tail_term = 0.0;
  double bound = 0.0;
  std::optional<double> true_error;
  std::optional<double> p_error;
};

struct SweepTable {
  std::string name;
  std::vector<SweepRow> rows;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

/// Collects inequality/equality outcomes for a campaign. Slack is
/// normalized by the supplied scale; a slack below -tolerance is recorded
/// as a violation, below -abort_threshold it throws, because inequalities
/// checked here are theorems.
class CheckRecorder {
 public:
  CheckRecorder(std::string campaign, const CampaignConfig& config) {
    report_.campaign = std::move(campaign);
    report_.config = config;
  }

  // lhs <= rhs up to tolerance * scale.
  template <typename DigestFn>
  void expect_le(double lhs, double rhs, double tolerance, double scale,
                 DigestFn&& digest) {
    record((rhs - lhs) / effective(scale), lhs, rhs, tolerance, digest);
  }

  // |lhs - rhs| <= tolerance * scale.
  template <typename DigestFn>
  void expect_eq(double lhs, double rhs, double tolerance, double scale,
                 DigestFn&& digest) {
    record(-std::abs(lhs - rhs) / effective(scale), lhs, rhs, tolerance,
           digest);
  }

  VerificationReport take(int trials, double elapsed_seconds) {
    report_.trials = trials;
    report_.elapsed_seconds = elapsed_seconds;
    return std::move(report_);
  }

 private:
  static double effective(double scale) { return std::max(scale, 1e-12); }

  template <typename DigestFn>
  void record(double slack, double lhs, double rhs, double tolerance,
              DigestFn&& digest) {
    ++report_.checks;
    if (report_.checks == 1 || slack < report_.min_slack)
      report_.min_slack = slack;
    if (slack < -report_.config.abort_threshold)
      throw MathematicalViolation(digest() +
                                  ": slack = " + std::to_string(slack));
    if (slack < -tolerance)
      report_.violations.push_back({digest(), lhs, rhs, slack, tolerance});
  }

  VerificationReport report_;
};

inline void require_campaign_config(const CampaignConfig& config,
                                    const char* op) {
  if (config.trials < 1)
    throw std::invalid_argument(std::string(op) + ": trials must be >= 1");
  if (config.dims.empty())
    throw std::invalid_argument(std::string(op) + ": dims must be non-empty");
  for (const Index d : config.dims)
    if (d < 1)
      throw std::invalid_argument(std::string(op) + ": dims must be >= 1");
}

inline void require_strictly_monotone(const std::vector<double>& grid,
                                      const char* what) {
  if (grid.empty())
    throw std::invalid_argument(std::string(what) + " must be non-empty");
  if (grid.size() == 1) return;
  const bool increasing = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool step_up = grid[i] > grid[i - 1];
    if (step_up != increasing || grid[i] == grid[i - 1])
      throw std::invalid_argument(std::string(what) +
                                  " must be strictly monotone");
  }
}

/// Cumulative spectral tails of |mu| from the small end: tails[n] equals the
/// sum of moduli from index n on, tails[len] = 0.
inline std::vector<double> suffix_tails(const RealVector<double>& moduli) {
  std::vector<double> tails(static_cast<std::size_t>(moduli.size()) + 1, 0.0);
  CompensatedSum<double> acc;
  for (Index i = moduli.size(); i-- > 0;) {
    acc += moduli[i];
    tails[static_cast<std::size_t>(i)] = acc.value();
  }
  return tails;
}

}  // namespace detail

/// Randomized campaign over the truncation bound
///   ||A0 - A||_1 <= 3 N^((p-1)/p) ||A0 - A||_p + 2 tail(N)
/// for every N in {0..dim} and every p in the grid. Trials stratify A0 over
/// thermal spectra (40%), power-law spectra (20%), Ginibre density matrices
/// (20%) and signed Hermitian unit-trace-norm operators (20%); A alternates
/// between perturbations of A0 and independent draws, Hermitian or not.
inline VerificationReport verify_theorem1(const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_campaign_config(config, "verify_theorem1");
  if (config.p_grid.empty())
    throw std::invalid_argument("verify_theorem1: p grid must be non-empty");
  for (const double pv : config.p_grid) require_interior(PExponent(pv));

  detail::CheckRecorder rec("theorem1", config);
  for (int t = 0; t < config.trials; ++t) {
    rng::Xoshiro256StarStar gen(rng::derive_stream(config.seed,
                                                   static_cast<std::uint64_t>(t)));
    const Index dim = config.dims[gen() % config.dims.size()];
    const int stratum = t % 10;
    const bool matched = (gen() & 1) != 0;

    const char* kind = "";
    GeneratedState a0;
    if (stratum < 4) {
      kind = "gibbs";
      const double beta = 0.3 + 2.7 * rng::uniform01(gen);
      a0 = gibbs_state(beta, dim, gen());
    } else if (stratum < 6) {
      kind = "powerlaw";
      const double alpha = 1.1 + 2.0 * rng::uniform01(gen);
      a0 = power_law_state(alpha, dim, gen());
    } else if (stratum < 8) {
      kind = "density";
      a0 = random_density_matrix(dim, gen());
    } else {
      kind = "signed";
      Eigen::MatrixXcd m = random_unit_trace_norm(dim, gen(), true);
      SpectrumXd spectrum = hermitian_eig(m);
      a0 = {std::move(m), std::move(spectrum), std::nullopt, 0.0};
    }

    Eigen::MatrixXcd a;
    if (matched) {
      const double magnitude = std::pow(10.0, -4.0 * rng::uniform01(gen));
      a = perturb_renormalized(a0, magnitude, gen(), (gen() & 1) != 0);
    } else {
      a = random_unit_trace_norm(dim, gen(), (gen() & 1) != 0);
    }

    const std::vector<double> tails = detail::suffix_tails(a0.spectrum.moduli());
    const RealVector<double> sv = singular_values((a0.matrix - a).eval());
    const double err1 = norm_from_singular_values(sv, PExponent(1.0));
    for (const double pv : config.p_grid) {
      const PExponent p(pv);
      const double errp = norm_from_singular_values(sv, p);
      for (Index n = 0; n <= dim; ++n) {
        const double tail =
            static_cast<std::size_t>(n) < tails.size() - 1
                ? tails[static_cast<std::size_t>(n)]
                : 0.0;
        const double rhs =
            3.0 * std::pow(static_cast<double>(n), p.inverse_conjugate()) *
                errp +
            2.0 * tail;
        rec.expect_le(err1, rhs, config.inequality_tol, 1.0, [&] {
          return "theorem1 trial=" + std::to_string(t) + " kind=" + kind +
                 " dim=" + std::to_string(dim) +
                 (matched ? " matched" : " independent") +
                 " p=" + std::to_string(pv) + " N=" + std::to_string(n);
        });
      }
    }
  }
  return rec.take(config.trials, detail::seconds_since(start));
}

/// Randomized campaign over the splitting identities behind the bound:
/// corner additivity ||PAP||_1 + ||QAQ||_1 = ||PAP + QAQ||_1, pinching
/// contraction, and the corner-splitting inequality with its commuting
/// equality case (exercised every fourth trial by construction).
inline VerificationReport verify_lemmas(const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_campaign_config(config, "verify_lemmas");

  detail::CheckRecorder rec("lemmas", config);
  for (int t = 0; t < config.trials; ++t) {
    rng::Xoshiro256StarStar gen(rng::derive_stream(config.seed + 0x1eaf,
                                                   static_cast<std::uint64_t>(t)));
    const Index dim = config.dims[gen() % config.dims.size()];
    const bool commuting_trial = t % 4 == 3;

    Eigen::MatrixXcd a;
    ProjectionXd proj;
    if (commuting_trial) {
      // Hermitian A with one of its own spectral projections.
      a = random_unit_trace_norm(dim, gen(), true);
      const SpectrumXd s = hermitian_eig(a);
      const Index k = static_cast<Index>(gen() % static_cast<std::uint64_t>(dim + 1));
      proj = projection_from_columns<double>(s.eigenvectors.leftCols(k).eval());
    } else {
      a = ginibre_matrix(dim, gen());
      const Index k = static_cast<Index>(gen() % static_cast<std::uint64_t>(dim + 1));
      const Eigen::MatrixXcd u = random_unitary(dim, gen());
      proj = projection_from_columns<double>(u.leftCols(k).eval());
    }
    const double a1 = trace_norm(a);

    {
      const ProjectionXd q{
          Eigen::MatrixXcd::Identity(dim, dim) - proj.matrix, dim - proj.rank};
      const Eigen::MatrixXcd pap = compress(proj, a);
      const Eigen::MatrixXcd qaq = compress(q, a);
      const double split = trace_norm(pap) + trace_norm(qaq);
      const double joint = trace_norm((pap + qaq).eval());
      rec.expect_eq(split, joint, config.equality_tol, a1, [&] {
        return "corner-additivity trial=" + std::to_string(t) +
               " dim=" + std::to_string(dim) +
               " rank=" + std::to_string(proj.rank);
      });
    }

    {
      // Partition of a random basis into up to 4 blocks; half the time the
      // last block is dropped so the family does not resolve the identity.
      const Eigen::MatrixXcd u = random_unitary(dim, gen());
      const int groups = 1 + static_cast<int>(gen() % 4);
      std::vector<ProjectionXd> family;
      Index used = 0;
      for (int b = 0; b < groups && used < dim; ++b) {
        Index width = 1 + static_cast<Index>(
                              gen() % static_cast<std::uint64_t>(dim - used));
        if (b + 1 == groups) width = dim - used;
        family.push_back(
            projection_from_columns<double>(u.middleCols(used, width).eval()));
        used += width;
      }
      if ((gen() & 1) != 0 && family.size() > 1) family.pop_back();
      const Eigen::MatrixXcd pinched = pinch(a, family);
      rec.expect_le(trace_norm(pinched), a1, config.inequality_tol, 1.0, [&] {
        return "pinching-contraction trial=" + std::to_string(t) +
               " dim=" + std::to_string(dim) +
               " blocks=" + std::to_string(family.size());
      });
    }

    {
      const SplitBound<double> sb = split_bound_check(a, proj);
      rec.expect_le(sb.lhs, sb.rhs, config.inequality_tol, 1.0, [&] {
        return "corner-splitting trial=" + std::to_string(t) +
               " dim=" + std::to_string(dim) +
               " rank=" + std::to_string(proj.rank);
      });
      if (commuting_trial) {
        rec.expect_eq(sb.lhs, sb.rhs, config.equality_tol, a1, [&] {
          return "corner-splitting-equality trial=" + std::to_string(t) +
                 " dim=" + std::to_string(dim) +
                 " rank=" + std::to_string(proj.rank);
        });
      }
    }
  }
  return rec.take(config.trials, detail::seconds_since(start));
}

/// Randomized campaign over the norm toolbox: p-monotonicity, the triangle
/// inequality, both Hoelder pairings, unitary invariance, and the exact
/// rank-N projection norm ||P||_q = N^(1/q).
inline VerificationReport verify_norm_relations(const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_campaign_config(config, "verify_norm_relations");

  // Fixed property grids; p = 1 and p = inf are included deliberately.
  const std::vector<double> grid = {1.0, 1.5, 2.0, 3.0,
                                    std::numeric_limits<double>::infinity()};
  const std::vector<double> interior = {1.25, 1.5, 2.0, 3.0, 5.0};

  detail::CheckRecorder rec("norms", config);
  for (int t = 0; t < config.trials; ++t) {
    rng::Xoshiro256StarStar gen(rng::derive_stream(config.seed + 0x706e,
                                                   static_cast<std::uint64_t>(t)));
    const Index dim = config.dims[gen() % config.dims.size()];

    // Unit operator-norm scaling keeps the absolute tolerances meaningful.
    Eigen::MatrixXcd a = ginibre_matrix(dim, gen());
    a /= schatten_norm(a, PExponent::infinity());
    Eigen::MatrixXcd b = ginibre_matrix(dim, gen());
    b /= schatten_norm(b, PExponent::infinity());

    const RealVector<double> sv_a = singular_values(a);
    const RealVector<double> sv_b = singular_values(b);
    std::vector<double> norm_a, norm_b;
    for (const double pv : grid) {
      norm_a.push_back(norm_from_singular_values(sv_a, PExponent(pv)));
      norm_b.push_back(norm_from_singular_values(sv_b, PExponent(pv)));
    }

    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i + 1; j < grid.size(); ++j)
        rec.expect_le(norm_a[j], norm_a[i], 1e-10, 1.0, [&] {
          return "monotonicity trial=" + std::to_string(t) +
                 " p=" + std::to_string(grid[i]) +
                 " q=" + std::to_string(grid[j]);
        });

    const RealVector<double> sv_sum = singular_values((a + b).eval());
    const RealVector<double> sv_prod = singular_values((a * b).eval());
    const double prod_1 = norm_from_singular_values(sv_prod, PExponent(1.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const PExponent p(grid[i]);
      rec.expect_le(norm_from_singular_values(sv_sum, p),
                    norm_a[i] + norm_b[i], 1e-10, 1.0, [&] {
                      return "triangle trial=" + std::to_string(t) +
                             " p=" + std::to_string(grid[i]);
                    });
      const double conj_norm_b =
          norm_from_singular_values(sv_b, p.conjugate());
      rec.expect_le(prod_1, norm_a[i] * conj_norm_b, 1e-10, 1.0, [&] {
        return "hoelder trial=" + std::to_string(t) +
               " p=" + std::to_string(grid[i]);
      });
    }

    {
      const Eigen::MatrixXcd u = random_unitary(dim, gen());
      const Eigen::MatrixXcd v = random_unitary(dim, gen());
      const RealVector<double> sv_rot = singular_values((u * a * v).eval());
      for (std::size_t i = 0; i < grid.size(); ++i)
        rec.expect_eq(norm_from_singular_values(sv_rot, PExponent(grid[i])),
                      norm_a[i], 1e-9, 1.0, [&] {
                        return "unitary-invariance trial=" + std::to_string(t) +
                               " p=" + std::to_string(grid[i]);
                      });
    }

    {
      const Index k = static_cast<Index>(gen() % static_cast<std::uint64_t>(dim + 1));
      const Eigen::MatrixXcd u = random_unitary(dim, gen());
      const ProjectionXd proj =
          projection_from_columns<double>(u.leftCols(k).eval());
      const RealVector<double> sv_p = singular_values(proj.matrix);
      for (const double pv : interior) {
        const PExponent p(pv);
        rec.expect_eq(norm_from_singular_values(sv_p, p.conjugate()),
                      std::pow(static_cast<double>(k), p.inverse_conjugate()),
                      1e-12, 1.0, [&] {
                        return "projection-norm trial=" + std::to_string(t) +
                               " rank=" + std::to_string(k) +
                               " p=" + std::to_string(pv);
                      });
      }
    }
  }
  return rec.take(config.trials, detail::seconds_since(start));
}

/// Sweep the certificate against the true error along one noise ray: the
/// same seed (hence the same noise direction) at every magnitude, optimal
/// truncation from A0's own spectrum.
inline SweepTable sweep_corollary1(const GeneratedState& a0, PExponent p,
                                   const std::vector<double>& magnitudes,
                                   std::uint64_t seed,
                                   bool hermitian_noise = false) {
  require_interior(p);
  detail::require_strictly_monotone(magnitudes, "sweep_corollary1: magnitudes");
  const EmpiricalDecay tail_model{nonzero_moduli(a0.spectrum)};
  const std::uint64_t n_max =
      std::max<std::uint64_t>(1, tail_model.moduli.size());

  SweepTable table{"corollary1", {}};
  for (const double magnitude : magnitudes) {
    const Eigen::MatrixXcd a =
        perturb_renormalized(a0, magnitude, seed, hermitian_noise);
    const RealVector<double> sv = singular_values((a0.matrix - a).eval());
    const double p_error = norm_from_singular_values(sv, p);
    const double true_1 = norm_from_singular_values(sv, PExponent(1.0));
    const Certificate cert =
        optimal_certificate(p_error, p, DecayModel(tail_model), n_max);
    table.rows.push_back({magnitude,
                          static_cast<double>(cert.truncation_rank),
                          cert.truncation_term, cert.tail_term, cert.bound,
                          true_1, p_error});
  }
  return table;
}

/// Sweep the accuracy-only bound over a grid of target accuracies.
inline SweepTable sweep_corollary2(const DecayModel& model, PExponent p,
                                   const std::vector<double>& eps_grid) {
  require_interior(p);
  validate(model);
  detail::require_strictly_monotone(eps_grid, "sweep_corollary2: eps grid");

  SweepTable table{"corollary2", {}};
  for (const double eps : eps_grid) {
    if (!(eps > 0))
      throw std::invalid_argument("sweep_corollary2: eps must be positive");
    const double n = n_epsilon(model, eps);
    const double bound = corollary2_bound(eps, p, model);
    const double trunc = 3.0 * std::pow(n, p.inverse_conjugate()) * eps;
    table.rows.push_back(
        {eps, n, trunc, 2.0 * eps, bound, std::nullopt, std::nullopt});
  }
  return table;
}

}  // namespace schatten
