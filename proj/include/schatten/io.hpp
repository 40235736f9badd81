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

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "schatten/bounds.hpp"
#include "schatten/errors.hpp"
#include "schatten/types.hpp"
#include "schatten/verify.hpp"

namespace schatten::io {

using Json = nlohmann::json;

inline constexpr const char* kMatrixFormatTag = "schatten-matrix/1";

struct MatrixMetadata {
  std::optional<std::string> name;
  std::optional<DecayModel> model;
  std::optional<std::uint64_t> seed;
};

struct LoadedMatrix {
  Eigen::MatrixXcd matrix;
  MatrixMetadata metadata;
};

/// Shortest decimal form of a double that round-trips exactly (never more
/// than 17 significant digits); locale-independent by construction.
inline std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return std::move(ss).str();
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

inline Json model_to_json(const DecayModel& model) {
  if (const auto* pl = std::get_if<PowerLawDecay>(&model))
    return Json{{"kind", "powerlaw"}, {"C", pl->C}, {"alpha", pl->alpha}};
  if (const auto* ex = std::get_if<ExponentialDecay>(&model))
    return Json{{"kind", "exponential"}, {"C", ex->C}, {"beta", ex->beta}};
  return Json{{"kind", "empirical"},
              {"moduli", std::get<EmpiricalDecay>(model).moduli}};
}

inline DecayModel model_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    DecayModel model;
    if (kind == "powerlaw") {
      model = PowerLawDecay{j.at("C").get<double>(),
                            j.at("alpha").get<double>()};
    } else if (kind == "exponential") {
      model = ExponentialDecay{j.at("C").get<double>(),
                               j.at("beta").get<double>()};
    } else if (kind == "empirical") {
      model =
          EmpiricalDecay{j.at("moduli").get<std::vector<double>>()};
    } else {
      throw FileFormatError("unknown decay model kind: " + kind);
    }
    validate(model);
    return model;
  } catch (const Json::exception& e) {
    throw FileFormatError(std::string("bad decay model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(std::string("bad decay model: ") + e.what());
  }
}

inline Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["p"] = cert.p.value();
  j["p_error"] = cert.p_error;
  j["N"] = cert.truncation_rank;
  j["truncation_term"] = cert.truncation_term;
  j["tail_term"] = cert.tail_term;
  j["bound"] = cert.bound;
  j["tail_source"] =
      cert.tail_source ? model_to_json(*cert.tail_source) : Json(nullptr);
  return j;
}

/// Structured text format for complex matrices: a version tag, the
/// dimension, and row-major real/imag arrays whose entries round-trip
/// exactly. Optional metadata records how the matrix was produced
/// (generator name, decay model, seed).
inline void save_matrix(const std::filesystem::path& path,
                        const Eigen::MatrixXcd& m,
                        const MatrixMetadata& metadata = {}) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionMismatch("save_matrix: matrix must be square, dim >= 1");
  if (!m.allFinite())
    throw std::invalid_argument("save_matrix: non-finite entries");
  Json j;
  j["format"] = kMatrixFormatTag;
  j["dim"] = m.rows();
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      re_row.push_back(m(i, k).real());
      im_row.push_back(m(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["real"] = std::move(re);
  j["imag"] = std::move(im);
  if (metadata.name || metadata.model || metadata.seed) {
    Json md = Json::object();
    if (metadata.name) md["name"] = *metadata.name;
    if (metadata.model) md["model"] = model_to_json(*metadata.model);
    if (metadata.seed) md["seed"] = *metadata.seed;
    j["metadata"] = std::move(md);
  }
  write_text(path, j.dump(2) + "\n");
}

inline LoadedMatrix load_matrix(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FileFormatError(path.string() + ": " + e.what());
  }
  try {
    if (!j.contains("format") || j.at("format") != kMatrixFormatTag)
      throw FileFormatError(path.string() + ": missing or unknown format tag");
    const Index dim = j.at("dim").get<Index>();
    if (dim < 1) throw FileFormatError(path.string() + ": dim must be >= 1");
    const Json& re = j.at("real");
    const Json& im = j.at("imag");
    if (static_cast<Index>(re.size()) != dim ||
        static_cast<Index>(im.size()) != dim)
      throw FileFormatError(path.string() + ": row count differs from dim");
    LoadedMatrix out;
    out.matrix.resize(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      const Json& re_row = re.at(static_cast<std::size_t>(i));
      const Json& im_row = im.at(static_cast<std::size_t>(i));
      if (static_cast<Index>(re_row.size()) != dim ||
          static_cast<Index>(im_row.size()) != dim)
        throw FileFormatError(path.string() + ": ragged rows");
      for (Index k = 0; k < dim; ++k)
        out.matrix(i, k) = std::complex<double>(
            re_row.at(static_cast<std::size_t>(k)).get<double>(),
            im_row.at(static_cast<std::size_t>(k)).get<double>());
    }
    if (!out.matrix.allFinite())
      throw FileFormatError(path.string() + ": non-finite entries");
    if (j.contains("metadata")) {
      const Json& md = j.at("metadata");
      if (md.contains("name"))
        out.metadata.name = md.at("name").get<std::string>();
      if (md.contains("model"))
        out.metadata.model = model_from_json(md.at("model"));
      if (md.contains("seed"))
        out.metadata.seed = md.at("seed").get<std::uint64_t>();
    }
    return out;
  } catch (const Json::exception& e) {
    throw FileFormatError(path.string() + ": " + e.what());
  }
}

inline Json report_to_json(const VerificationReport& report) {
  Json j;
  j["campaign"] = report.campaign;
  j["trials"] = report.trials;
  j["checks"] = report.checks;
  j["min_slack"] = report.min_slack;
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"digest", v.digest},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs},
                              {"slack", v.slack},
                              {"tolerance", v.tolerance}});
  j["violations"] = std::move(violations);
  j["config"] = Json{{"trials", report.config.trials},
                     {"dims", report.config.dims},
                     {"p_grid", report.config.p_grid},
                     {"seed", report.config.seed},
                     {"inequality_tol", report.config.inequality_tol},
                     {"equality_tol", report.config.equality_tol},
                     {"abort_threshold", report.config.abort_threshold}};
  j["elapsed_seconds"] = report.elapsed_seconds;
  return j;
}

/// CSV with a fixed column set; the true_error field stays blank for sweeps
/// that have no concrete pair to compare against. Doubles are written in
/// shortest round-trip form, rows end with LF.
inline std::string sweep_to_csv(const SweepTable& table) {
  std::string out = "swept,N,truncation_term,tail_term,bound,true_error\n";
  for (const auto& row : table.rows) {
    out += format_double(row.swept);
    out += ',';
    out += format_double(row.truncation_rank);
    out += ',';
    out += format_double(row.truncation_term);
    out += ',';
    out += format_double(row.tail_term);
    out += ',';
    out += format_double(row.bound);
    out += ',';
    if (row.true_error) out += format_double(*row.true_error);
    out += '\n';
  }
  return out;
}

}  // namespace schatten::io
