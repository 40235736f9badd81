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

#include "schatten/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "schatten/io.hpp"
#include "schatten/schatten.hpp"

namespace schatten::cli {
namespace {

namespace fs = std::filesystem;
using io::Json;

std::vector<double> parse_double_list(const std::string& csv,
                                      const char* flag) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(flag) + ": cannot parse '" +
                                  item + "' as a number");
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string(flag) +
                                " must be a non-empty comma-separated list");
  return out;
}

std::vector<Index> parse_index_list(const std::string& csv, const char* flag) {
  std::vector<Index> out;
  for (const double v : parse_double_list(csv, flag)) {
    if (!(v >= 1) || v != std::floor(v))
      throw std::invalid_argument(std::string(flag) +
                                  " entries must be positive integers");
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

/// Output path resolution: an explicit --out wins, otherwise the default
/// file name lands in $SCHATTEN_OUT_DIR (falling back to the working
/// directory).
fs::path resolve_out(const std::string& user_out, const char* default_name) {
  if (!user_out.empty()) return fs::path(user_out);
  const char* dir = std::getenv("SCHATTEN_OUT_DIR");
  return fs::path(dir != nullptr && *dir != '\0' ? dir : ".") / default_name;
}

/// Spectral data for a stored operator: Hermitian inputs are decomposed,
/// diagonal inputs are read off directly. Anything else is rejected; a
/// general normal operator cannot be decomposed reliably from its matrix
/// alone here.
SpectrumXd spectrum_from_matrix(const Eigen::MatrixXcd& m) {
  if (operator_norm((m - m.adjoint()).eval()) <= tol::herm)
    return hermitian_eig(m);
  Eigen::MatrixXcd off = m;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() <= tol::herm)
    return make_spectrum<double>(
        ComplexVector<double>(m.diagonal()),
        Eigen::MatrixXcd::Identity(m.rows(), m.rows()));
  throw NotHermitian(
      "the reference operator must be Hermitian or diagonal; general normal "
      "operators need explicit spectral data");
}

DecayModel model_from_flags(const std::string& model, double c, bool has_c,
                            double alpha, bool has_alpha, double beta,
                            bool has_beta, const std::string& a0_file,
                            bool has_a0) {
  if (model == "powerlaw") {
    if (!has_c || !has_alpha)
      throw std::invalid_argument("--model powerlaw requires --C and --alpha");
    DecayModel m = PowerLawDecay{c, alpha};
    validate(m);
    return m;
  }
  if (model == "exponential") {
    if (!has_c || !has_beta)
      throw std::invalid_argument(
          "--model exponential requires --C and --beta");
    DecayModel m = ExponentialDecay{c, beta};
    validate(m);
    return m;
  }
  if (model == "empirical") {
    if (!has_a0)
      throw std::invalid_argument(
          "--model empirical takes its moduli from --a0 FILE");
    const io::LoadedMatrix loaded = io::load_matrix(a0_file);
    const SpectrumXd spectrum = spectrum_from_matrix(loaded.matrix);
    DecayModel m = EmpiricalDecay{nonzero_moduli(spectrum)};
    validate(m);
    return m;
  }
  throw std::invalid_argument(
      "--model must be powerlaw, exponential or empirical");
}

struct CertifyArgs {
  double p = 0.0;
  std::string a0_file;
  std::string a_file;
  bool has_a0 = false;
  bool has_a = false;
  double p_error = 0.0;
  bool has_p_error = false;
  std::string model;
  double c = 0.0;
  bool has_c = false;
  double alpha = 0.0;
  bool has_alpha = false;
  double beta = 0.0;
  bool has_beta = false;
  std::uint64_t n_max = 0;
  bool has_n_max = false;
  std::string out;
};

int cmd_certify(const CertifyArgs& args) {
  const PExponent p(args.p);
  require_interior(p);

  Json out;
  if (args.has_p_error) {
    if (args.model.empty())
      throw std::invalid_argument("certify with --p-error needs --model");
    const DecayModel model =
        model_from_flags(args.model, args.c, args.has_c, args.alpha,
                         args.has_alpha, args.beta, args.has_beta,
                         args.a0_file, args.has_a0);
    if (!(args.p_error >= 0) || !std::isfinite(args.p_error))
      throw std::invalid_argument("--p-error must be finite and >= 0");
    std::uint64_t n_max = 0;
    if (args.has_n_max) {
      if (args.n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
      n_max = args.n_max;
    } else if (const auto* emp = std::get_if<EmpiricalDecay>(&model)) {
      n_max = std::max<std::uint64_t>(1, emp->moduli.size());
    } else if (args.p_error > 0) {
      // Past a few times N(eps) the truncation term alone dominates, so
      // this window always contains the optimum.
      const double guess = 4.0 * n_epsilon(model, args.p_error) + 16.0;
      n_max = static_cast<std::uint64_t>(std::min(guess, 1.0e15));
    } else {
      throw std::invalid_argument(
          "an analytic model with --p-error 0 needs an explicit --n-max");
    }
    out = io::certificate_to_json(optimal_certificate(args.p_error, p, model, n_max));
  } else if (args.has_a0 && args.has_a) {
    const io::LoadedMatrix a0 = io::load_matrix(args.a0_file);
    const io::LoadedMatrix a = io::load_matrix(args.a_file);
    const SpectrumXd spectrum = spectrum_from_matrix(a0.matrix);
    const CertifyExactResult result = certify_exact(spectrum, a.matrix, p);
    out = io::certificate_to_json(result.certificate);
    out["true_1_error"] = result.true_1_error;
  } else {
    throw std::invalid_argument(
        "certify needs either --a0 and --a (exact mode) or --p-error with "
        "--model (model mode)");
  }

  const std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!args.out.empty()) io::write_text(args.out, text);
  return 0;
}

struct GenerateArgs {
  std::string type;
  Index dim = 0;
  double beta = 1.0;
  bool has_beta = false;
  double alpha = 2.0;
  bool has_alpha = false;
  std::uint64_t basis_seed = 0;
  bool has_basis_seed = false;
  std::uint64_t seed = 0;
  bool hermitian = false;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  if (args.out.empty())
    throw std::invalid_argument("generate requires --out FILE");
  if (args.dim < 1) throw std::invalid_argument("--dim must be >= 1");
  const std::optional<std::uint64_t> basis =
      args.has_basis_seed ? std::optional<std::uint64_t>(args.basis_seed)
                          : std::nullopt;

  io::MatrixMetadata meta;
  meta.name = args.type;
  Eigen::MatrixXcd m;
  if (args.type == "gibbs") {
    if (!args.has_beta)
      throw std::invalid_argument("--type gibbs requires --beta");
    GeneratedState st = gibbs_state(args.beta, args.dim, basis);
    m = std::move(st.matrix);
    meta.model = st.model;
    if (basis) meta.seed = *basis;
  } else if (args.type == "powerlaw") {
    if (!args.has_alpha)
      throw std::invalid_argument("--type powerlaw requires --alpha");
    GeneratedState st = power_law_state(args.alpha, args.dim, basis);
    m = std::move(st.matrix);
    meta.model = st.model;
    if (basis) meta.seed = *basis;
  } else if (args.type == "density") {
    GeneratedState st = random_density_matrix(args.dim, args.seed);
    m = std::move(st.matrix);
    meta.seed = args.seed;
  } else if (args.type == "traceone") {
    m = random_unit_trace_norm(args.dim, args.seed, args.hermitian);
    meta.seed = args.seed;
  } else {
    throw std::invalid_argument(
        "--type must be gibbs, powerlaw, density or traceone");
  }
  io::save_matrix(args.out, m, meta);
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

struct VerifyArgs {
  std::string campaign = "all";
  int trials = 1000;
  std::uint64_t seed = 0;
  std::string dims = "2,4,8,16";
  std::string p_grid = "1.25,1.5,2,3,5";
  std::string out;
};

int cmd_verify(const VerifyArgs& args) {
  CampaignConfig config;
  config.trials = args.trials;
  config.seed = args.seed;
  config.dims = parse_index_list(args.dims, "--dims");
  config.p_grid = parse_double_list(args.p_grid, "--p-grid");

  std::vector<VerificationReport> reports;
  const bool all = args.campaign == "all";
  if (all || args.campaign == "theorem1")
    reports.push_back(verify_theorem1(config));
  if (all || args.campaign == "lemmas") reports.push_back(verify_lemmas(config));
  if (all || args.campaign == "norms")
    reports.push_back(verify_norm_relations(config));
  if (reports.empty())
    throw std::invalid_argument(
        "--campaign must be all, theorem1, lemmas or norms");

  bool violated = false;
  for (const auto& r : reports) {
    violated = violated || !r.passed();
    std::cout << r.campaign << ": trials=" << r.trials
              << " checks=" << r.checks
              << " violations=" << r.violations.size()
              << " min_slack=" << io::format_double(r.min_slack) << "\n";
  }

  Json j;
  if (reports.size() == 1) {
    j = io::report_to_json(reports.front());
  } else {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(io::report_to_json(r));
    j = Json{{"reports", std::move(arr)}};
  }
  const fs::path out_path = resolve_out(args.out, "report.json");
  io::write_text(out_path, j.dump(2) + "\n");
  std::cout << "wrote " << out_path.string() << "\n";
  return violated ? 1 : 0;
}

struct SweepArgs {
  std::string sweep;
  double p = 0.0;
  std::string state = "gibbs";
  double beta = 1.0;
  bool has_beta = false;
  double alpha = 1.5;
  bool has_alpha = false;
  Index dim = 16;
  std::uint64_t basis_seed = 0;
  bool has_basis_seed = false;
  std::uint64_t seed = 0;
  bool hermitian = false;
  std::string magnitudes;
  std::string eps;
  std::string model;
  double c = 0.0;
  bool has_c = false;
  std::string a0_file;
  bool has_a0 = false;
  std::string out;
};

int cmd_sweep(const SweepArgs& args) {
  const PExponent p(args.p);
  require_interior(p);

  SweepTable table;
  if (args.sweep == "corollary1") {
    if (args.magnitudes.empty())
      throw std::invalid_argument("--sweep corollary1 requires --magnitudes");
    const std::vector<double> mags =
        parse_double_list(args.magnitudes, "--magnitudes");
    const std::optional<std::uint64_t> basis =
        args.has_basis_seed ? std::optional<std::uint64_t>(args.basis_seed)
                            : std::nullopt;
    GeneratedState a0;
    if (args.state == "gibbs") {
      a0 = gibbs_state(args.beta, args.dim, basis);
    } else if (args.state == "powerlaw") {
      a0 = power_law_state(args.has_alpha ? args.alpha : 1.5, args.dim, basis);
    } else {
      throw std::invalid_argument("--state must be gibbs or powerlaw");
    }
    table = sweep_corollary1(a0, p, mags, args.seed, args.hermitian);
  } else if (args.sweep == "corollary2") {
    if (args.eps.empty())
      throw std::invalid_argument("--sweep corollary2 requires --eps");
    if (args.model.empty())
      throw std::invalid_argument("--sweep corollary2 requires --model");
    const std::vector<double> eps = parse_double_list(args.eps, "--eps");
    const DecayModel model = model_from_flags(
        args.model, args.c, args.has_c, args.alpha, args.has_alpha, args.beta,
        args.has_beta, args.a0_file, args.has_a0);
    table = sweep_corollary2(model, p, eps);
  } else {
    throw std::invalid_argument("--sweep must be corollary1 or corollary2");
  }

  const fs::path out_path = resolve_out(args.out, "sweep.csv");
  io::write_text(out_path, io::sweep_to_csv(table));
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{
      "Trace-norm error certificates from Schatten p-norm errors and "
      "spectral decay"};
  app.name("schatten");
  app.require_subcommand(1);

  CertifyArgs cargs;
  GenerateArgs gargs;
  VerifyArgs vargs;
  SweepArgs sargs;

  CLI::App* certify = app.add_subcommand(
      "certify", "Certify a trace-norm error from a p-norm error");
  certify->add_option("--p", cargs.p, "Schatten exponent, 1 < p < inf")
      ->required();
  CLI::Option* c_a0 = certify->add_option(
      "--a0", cargs.a0_file, "reference operator file (Hermitian or diagonal)");
  CLI::Option* c_a =
      certify->add_option("--a", cargs.a_file, "estimate operator file");
  CLI::Option* c_perr = certify->add_option(
      "--p-error", cargs.p_error, "p-norm error of the estimate (model mode)");
  certify->add_option("--model", cargs.model,
                      "decay model: powerlaw, exponential or empirical");
  CLI::Option* c_c = certify->add_option("--C", cargs.c, "model constant C");
  CLI::Option* c_alpha =
      certify->add_option("--alpha", cargs.alpha, "power-law exponent, > 1");
  CLI::Option* c_beta =
      certify->add_option("--beta", cargs.beta, "exponential rate, > 0");
  CLI::Option* c_nmax = certify->add_option(
      "--n-max", cargs.n_max, "largest truncation rank to consider");
  certify->add_option("--out", cargs.out,
                      "also write the certificate JSON to this file");

  CLI::App* generate =
      app.add_subcommand("generate", "Generate a test operator file");
  generate
      ->add_option("--type", gargs.type,
                   "gibbs, powerlaw, density or traceone")
      ->required();
  generate->add_option("--dim", gargs.dim, "dimension, >= 1")->required();
  CLI::Option* g_beta =
      generate->add_option("--beta", gargs.beta, "inverse temperature, > 0");
  CLI::Option* g_alpha =
      generate->add_option("--alpha", gargs.alpha, "power-law exponent, > 1");
  CLI::Option* g_basis = generate->add_option(
      "--basis-seed", gargs.basis_seed,
      "conjugate spectral generators into a seeded random eigenbasis");
  generate->add_option("--seed", gargs.seed,
                       "seed for the random generators (default 0)");
  generate->add_flag("--hermitian", gargs.hermitian,
                     "make traceone operators Hermitian");
  generate->add_option("--out", gargs.out, "output file")->required();

  CLI::App* verify =
      app.add_subcommand("verify", "Run randomized verification campaigns");
  verify->add_option("--campaign", vargs.campaign,
                     "all, theorem1, lemmas or norms (default all)");
  verify->add_option("--trials", vargs.trials,
                     "trials per campaign (default 1000)");
  verify->add_option("--seed", vargs.seed, "campaign seed (default 0)");
  verify->add_option("--dims", vargs.dims,
                     "comma-separated dimensions (default 2,4,8,16)");
  verify->add_option("--p-grid", vargs.p_grid,
                     "comma-separated exponents (default 1.25,1.5,2,3,5)");
  verify->add_option("--out", vargs.out,
                     "report file (default report.json)");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Tabulate a bound along a parameter grid");
  sweep->add_option("--sweep", sargs.sweep, "corollary1 or corollary2")
      ->required();
  sweep->add_option("--p", sargs.p, "Schatten exponent, 1 < p < inf")
      ->required();
  sweep->add_option("--state", sargs.state,
                    "reference state for corollary1: gibbs or powerlaw");
  CLI::Option* s_beta = sweep->add_option(
      "--beta", sargs.beta, "inverse temperature / exponential rate");
  CLI::Option* s_alpha =
      sweep->add_option("--alpha", sargs.alpha, "power-law exponent");
  sweep->add_option("--dim", sargs.dim,
                    "reference state dimension (default 16)");
  CLI::Option* s_basis =
      sweep->add_option("--basis-seed", sargs.basis_seed,
                        "random eigenbasis seed for the reference state");
  sweep->add_option("--seed", sargs.seed,
                    "noise seed for corollary1 (default 0)");
  sweep->add_flag("--hermitian", sargs.hermitian,
                  "use Hermitian perturbations in corollary1");
  sweep->add_option("--magnitudes", sargs.magnitudes,
                    "comma-separated perturbation magnitudes (corollary1)");
  sweep->add_option("--eps", sargs.eps,
                    "comma-separated target accuracies (corollary2)");
  sweep->add_option("--model", sargs.model,
                    "decay model for corollary2: powerlaw, exponential or "
                    "empirical");
  CLI::Option* s_c = sweep->add_option("--C", sargs.c, "model constant C");
  CLI::Option* s_a0 = sweep->add_option(
      "--a0", sargs.a0_file, "operator file backing an empirical model");
  sweep->add_option("--out", sargs.out, "CSV file (default sweep.csv)");

  try {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("schatten");
    for (const auto& a : args) storage.push_back(a);
    std::vector<const char*> argv;
    argv.reserve(storage.size());
    for (const auto& s : storage) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(certify)) {
      cargs.has_a0 = c_a0->count() > 0;
      cargs.has_a = c_a->count() > 0;
      cargs.has_p_error = c_perr->count() > 0;
      cargs.has_c = c_c->count() > 0;
      cargs.has_alpha = c_alpha->count() > 0;
      cargs.has_beta = c_beta->count() > 0;
      cargs.has_n_max = c_nmax->count() > 0;
      return cmd_certify(cargs);
    }
    if (app.got_subcommand(generate)) {
      gargs.has_beta = g_beta->count() > 0;
      gargs.has_alpha = g_alpha->count() > 0;
      gargs.has_basis_seed = g_basis->count() > 0;
      return cmd_generate(gargs);
    }
    if (app.got_subcommand(verify)) return cmd_verify(vargs);
    if (app.got_subcommand(sweep)) {
      sargs.has_beta = s_beta->count() > 0;
      sargs.has_alpha = s_alpha->count() > 0;
      sargs.has_basis_seed = s_basis->count() > 0;
      sargs.has_c = s_c->count() > 0;
      sargs.has_a0 = s_a0->count() > 0;
      return cmd_sweep(sargs);
    }
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const MathematicalViolation& e) {
    std::cerr << "mathematical violation: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const FileFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace schatten::cli
