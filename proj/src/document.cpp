// Copyright 2026 The qmcontrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmcontrol/document.hpp"

#include "qmcontrol/dissipator.hpp"
#include "qmcontrol/su_basis.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace qmc {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPresetMatchTol = 1e-12;
constexpr int kMaxN = 32;

std::string quoted(const std::string& field) { return "field '" + field + "'"; }

// Drops the sign of negative zero so reports never print -0.0.
double clean(double v) { return v == 0.0 ? 0.0 : v; }

json parseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1;
    int column = 0;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 0;
      } else {
        ++column;
      }
    }
    ++column;
    std::string msg = e.what();
    if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    if (auto p = msg.find("column "); p != std::string::npos) {
      if (auto q = msg.find(": ", p); q != std::string::npos) msg = msg.substr(q + 2);
    }
    throw ParseError("malformed JSON: " + msg, "", line, column);
  }
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(quoted(field) + ": expected a number", field);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(quoted(field) + ": value is not finite", field);
  return v;
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(quoted(field) + ": expected an integer", field);
  return j.get<int>();
}

Vector vectorField(const json& j, const std::string& field, Eigen::Index n) {
  if (!j.is_array()) {
    throw ParseError(quoted(field) + ": expected an array of " + std::to_string(n) + " numbers",
                     field);
  }
  if (static_cast<Eigen::Index>(j.size()) != n) {
    throw ParseError(quoted(field) + ": expected " + std::to_string(n) + " entries, got " +
                         std::to_string(j.size()),
                     field);
  }
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = number(j[static_cast<std::size_t>(i)], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrixField(const json& j, const std::string& field, Eigen::Index n) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw ParseError(quoted(field) + ": expected " + std::to_string(n) + " rows of " +
                         std::to_string(n) + " numbers",
                     field);
  }
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    m.row(r) = vectorField(j[static_cast<std::size_t>(r)], field + "[" + std::to_string(r) + "]", n)
                   .transpose();
  }
  return m;
}

ChannelPreset presetField(const json& j) {
  if (!j.is_object()) throw ParseError(quoted("preset") + ": expected an object", "preset");
  for (const auto& [key, _] : j.items()) {
    if (key != "name" && key != "params") {
      throw ParseError("unknown field 'preset." + key + "'", "preset." + key);
    }
  }
  if (!j.contains("name") || !j["name"].is_string()) {
    throw ParseError(quoted("preset.name") + ": expected a string", "preset.name");
  }
  ChannelPreset spec;
  try {
    spec.channel = channelFromString(j["name"].get<std::string>());
  } catch (const InvalidArgument& e) {
    throw ParseError(quoted("preset.name") + ": " + e.what(), "preset.name");
  }
  if (j.contains("params")) {
    const json& p = j["params"];
    if (!p.is_object()) {
      throw ParseError(quoted("preset.params") + ": expected an object", "preset.params");
    }
    for (const auto& [key, value] : p.items()) {
      spec.params[key] = number(value, "preset.params." + key);
    }
  }
  return spec;
}

void requireClose(const Matrix& got, const Matrix& want, const std::string& field) {
  if (got.rows() != want.rows() || got.cols() != want.cols() ||
      (got - want).cwiseAbs().maxCoeff() > kPresetMatchTol) {
    throw ParseError(quoted(field) + ": conflicts with the named preset", field);
  }
}

ojson matrixJson(const Matrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(clean(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson vectorJson(const Vector& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(clean(v(i)));
  return a;
}

template <class Container>
ojson doubles(const Container& c) {
  ojson a = ojson::array();
  for (double x : c) a.push_back(clean(x));
  return a;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

ParseError::ParseError(const std::string& message, std::string field, int line, int column)
    : InvalidArgument(message), field_(std::move(field)), line_(line), column_(column) {}

std::string_view toString(GeneratorConvention c) {
  return c == GeneratorConvention::MMatrices ? "m_matrices" : "adjoint";
}

SystemDocument presetDocument(const ChannelPreset& spec) {
  const TwoLevelParams a = presetTwoLevelParams(spec);
  ChannelPreset full = defaultPreset(spec.channel);
  for (const auto& [k, v] : spec.params) full.params[k] = v;

  SystemDocument doc;
  doc.N = 2;
  doc.convention = GeneratorConvention::MMatrices;
  doc.h0 = Eigen::Vector3d(0.0, 0.0, full.params.at("h0_3"));
  doc.controls = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
  const GksMatrix g = gksFromTwoLevel(a);
  doc.A_real = g.matrix().real();
  doc.A_imag = g.matrix().imag();
  doc.preset = std::move(full);
  return doc;
}

SystemDocument parseSystemDocument(std::string_view text) {
  const json j = parseJson(text);
  if (!j.is_object()) throw ParseError("document root must be an object");
  static const std::set<std::string> known{"schema_version", "N",      "generator_convention",
                                           "h0",             "controls", "A_real",
                                           "A_imag",         "preset"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ParseError("unknown field '" + key + "'", key);
  }
  if (!j.contains("schema_version")) {
    throw ParseError(quoted("schema_version") + ": missing", "schema_version");
  }
  const int version = integer(j["schema_version"], "schema_version");
  if (version != 1) {
    throw ParseError(quoted("schema_version") + ": unsupported version " + std::to_string(version),
                     "schema_version");
  }

  if (j.contains("preset")) {
    const ChannelPreset spec = presetField(j["preset"]);
    SystemDocument doc;
    try {
      doc = presetDocument(spec);
    } catch (const InvalidArgument& e) {
      throw ParseError(quoted("preset.params") + ": " + e.what(), "preset.params");
    }
    const Eigen::Index n = 3;
    if (j.contains("N") && integer(j["N"], "N") != 2) {
      throw ParseError(quoted("N") + ": conflicts with the named preset (N = 2)", "N");
    }
    if (j.contains("generator_convention") &&
        j["generator_convention"] != json(std::string(toString(doc.convention)))) {
      throw ParseError(quoted("generator_convention") + ": presets use 'm_matrices'",
                       "generator_convention");
    }
    if (j.contains("h0")) requireClose(vectorField(j["h0"], "h0", n), doc.h0, "h0");
    if (j.contains("controls")) {
      const json& c = j["controls"];
      if (!c.is_array() || c.size() != doc.controls.size()) {
        throw ParseError(quoted("controls") + ": conflicts with the named preset", "controls");
      }
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string f = "controls[" + std::to_string(i) + "]";
        requireClose(vectorField(c[i], f, n), doc.controls[i], f);
      }
    }
    if (j.contains("A_real")) requireClose(matrixField(j["A_real"], "A_real", n), doc.A_real, "A_real");
    if (j.contains("A_imag")) requireClose(matrixField(j["A_imag"], "A_imag", n), doc.A_imag, "A_imag");
    return doc;
  }

  SystemDocument doc;
  doc.schema_version = version;
  if (!j.contains("N")) throw ParseError(quoted("N") + ": missing", "N");
  doc.N = integer(j["N"], "N");
  if (doc.N < 2 || doc.N > kMaxN) {
    throw ParseError(quoted("N") + ": must be between 2 and " + std::to_string(kMaxN), "N");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(doc.N) * doc.N - 1;

  if (j.contains("generator_convention")) {
    const json& c = j["generator_convention"];
    if (c == "adjoint") {
      doc.convention = GeneratorConvention::Adjoint;
    } else if (c == "m_matrices") {
      doc.convention = GeneratorConvention::MMatrices;
      if (doc.N != 2) {
        throw ParseError(quoted("generator_convention") + ": 'm_matrices' requires N = 2",
                         "generator_convention");
      }
    } else {
      throw ParseError(quoted("generator_convention") + ": expected 'adjoint' or 'm_matrices'",
                       "generator_convention");
    }
  }

  doc.h0 = j.contains("h0") ? vectorField(j["h0"], "h0", n) : Vector::Zero(n);
  if (!j.contains("controls")) throw ParseError(quoted("controls") + ": missing", "controls");
  const json& c = j["controls"];
  if (!c.is_array()) throw ParseError(quoted("controls") + ": expected an array", "controls");
  for (std::size_t i = 0; i < c.size(); ++i) {
    doc.controls.push_back(vectorField(c[i], "controls[" + std::to_string(i) + "]", n));
  }
  doc.A_real = j.contains("A_real") ? matrixField(j["A_real"], "A_real", n) : Matrix::Zero(n, n);
  doc.A_imag = j.contains("A_imag") ? matrixField(j["A_imag"], "A_imag", n) : Matrix::Zero(n, n);
  const double scale = std::max(1.0, doc.A_real.cwiseAbs().maxCoeff());
  if ((doc.A_real - doc.A_real.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw ParseError(quoted("A_real") + ": must be symmetric", "A_real");
  }
  const double iscale = std::max(1.0, doc.A_imag.cwiseAbs().maxCoeff());
  if ((doc.A_imag + doc.A_imag.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * iscale) {
    throw ParseError(quoted("A_imag") + ": must be antisymmetric", "A_imag");
  }
  // Exact Hermitian form so downstream checks see no rounding asymmetry.
  doc.A_real = 0.5 * (doc.A_real + doc.A_real.transpose()).eval();
  doc.A_imag = 0.5 * (doc.A_imag - doc.A_imag.transpose()).eval();
  return doc;
}

std::string toJson(const SystemDocument& doc) {
  ojson j;
  j["schema_version"] = doc.schema_version;
  j["N"] = doc.N;
  j["generator_convention"] = std::string(toString(doc.convention));
  j["h0"] = vectorJson(doc.h0);
  ojson controls = ojson::array();
  for (const auto& c : doc.controls) controls.push_back(vectorJson(c));
  j["controls"] = std::move(controls);
  j["A_real"] = matrixJson(doc.A_real);
  j["A_imag"] = matrixJson(doc.A_imag);
  if (doc.preset) {
    ojson params = ojson::object();
    for (const auto& [k, v] : doc.preset->params) params[k] = v;
    j["preset"] = {{"name", std::string(toString(doc.preset->channel))}, {"params", params}};
  }
  return dump(j);
}

ControlSystem buildSystem(const SystemDocument& doc, AssemblyMode mode) {
  if (doc.preset) return preset(*doc.preset);
  const HermitianBasis basis = gellmannBasis(doc.N);
  const GksMatrix a = GksMatrix::fromParts(doc.A_real, doc.A_imag);
  if (doc.convention == GeneratorConvention::Adjoint) {
    return systemFromHamiltonians(basis, doc.h0, doc.controls, a, mode);
  }
  if (doc.N != 2) throw InvalidArgument("buildSystem: 'm_matrices' convention requires N = 2");
  std::vector<AffineGenerator> controls;
  for (const auto& h : doc.controls) controls.push_back(blochHamiltonian(Eigen::Vector3d(h)));
  ControlSystem s = makeControlSystem(2, blochHamiltonian(Eigen::Vector3d(doc.h0)),
                                      assembleDissipator(a, basis, mode), std::move(controls), a);
  s.h0 = doc.h0;
  s.hks = doc.controls;
  return s;
}

std::string analyzeReport(const ControlSystem& system, const AnalyzeOptions& opts,
                          const std::vector<std::string>& warnings) {
  std::vector<std::string> warn = warnings;
  const int n = system.size();
  ojson r;
  r["schema_version"] = 1;
  r["N"] = system.N;
  r["n"] = n;
  r["admissible"] = system.admissible;

  if (system.gks) {
    const PsdReport psd = checkPsd(*system.gks, opts.psd_tol);
    r["psd"] = {{"is_psd", psd.is_psd},
                {"on_boundary", psd.on_boundary},
                {"min_eigenvalue", psd.min_eigenvalue},
                {"eigenvalues", vectorJson(psd.eigenvalues)}};
    if (!psd.is_psd) {
      warn.push_back("GKS matrix is not positive semidefinite; analysis run in permissive mode");
    }
    if (system.N == 2) {
      const MinorsReport m = checkMinors2Level(twoLevelFromGks(*system.gks));
      ojson checks = ojson::array();
      for (const auto& c : m.minors) {
        checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
      }
      r["minors"] = {{"all_hold", m.all_hold}, {"checks", std::move(checks)}};
    } else {
      r["minors"] = nullptr;
    }
  } else {
    r["psd"] = nullptr;
    r["minors"] = nullptr;
  }

  r["unital"] = isUnital(system.dissipator, opts.unital_tol);
  const TraceSplit split = splitTrace(system.dissipator);
  r["trace_split"] = {{"alpha", split.alpha},
                      {"trace", system.dissipator.linear().trace()},
                      {"traceless_linear", matrixJson(split.traceless.linear())},
                      {"traceless_translation", vectorJson(split.traceless.translation())}};

  std::vector<AffineGenerator> gens{system.drift()};
  gens.insert(gens.end(), system.controls.begin(), system.controls.end());
  const LieClosure c = closure(gens, opts.closure);
  ojson cl = {{"dim", c.dim}, {"generations", c.generations}, {"converged", c.converged}};
  if (c.converged) {
    const Classification k = classify(c, n, opts.closure.tol);
    const bool accessible = k.label == AlgebraClass::Gl || k.label == AlgebraClass::GlSemidirect;
    cl["classification"] = std::string(toString(k.label));
    cl["features"] = {{"dim", k.features.dim},
                      {"linear_dim", k.features.linear_dim},
                      {"translation_dim", k.features.translation_dim},
                      {"trace_norm", k.features.trace_norm},
                      {"has_trace", k.features.has_trace}};
    r["accessible"] = accessible;
    r["classification"] = std::string(toString(k.label));
  } else {
    cl["classification"] = nullptr;
    cl["features"] = nullptr;
    r["accessible"] = nullptr;
    r["classification"] = nullptr;
    warn.push_back("Lie closure did not converge within " +
                   std::to_string(opts.closure.max_generations) + " generations");
  }
  r["closure_dim"] = c.dim;
  r["closure"] = std::move(cl);

  ojson certs = ojson::array();
  for (const auto& cert : noncontrollabilityCertificates(system, opts.certificate_tol)) {
    ojson q = ojson::object();
    for (const auto& [k, v] : cert.quantities) q[k] = v;
    certs.push_back({{"kind", std::string(toString(cert.kind))},
                     {"statement", cert.statement},
                     {"quantities", std::move(q)},
                     {"note", cert.note}});
  }
  r["certificates"] = std::move(certs);

  if (auto fp = fixedPoint(system.drift(), system.N, opts.fixed_point_rcond)) {
    r["fixed_point"] = vectorJson(fp->rho());
    r["fixed_point_purity"] = purity(*fp);
    r["fixed_point_in_ball"] = fp->inBall();
  } else {
    r["fixed_point"] = nullptr;
    r["fixed_point_purity"] = nullptr;
    r["fixed_point_in_ball"] = nullptr;
  }

  if (system.h0 && !system.hks.empty()) {
    const HamiltonianControllability hc = hamiltonianControllability(
        gellmannBasis(system.N), *system.h0, system.hks, opts.closure.tol);
    r["hamiltonian_controllability"] = {{"controllable", hc.controllable}, {"dim", hc.dim}};
  } else {
    r["hamiltonian_controllability"] = nullptr;
  }

  r["tolerances"] = {{"closure", opts.closure.tol},
                     {"closure_max_generations", opts.closure.max_generations},
                     {"psd", opts.psd_tol},
                     {"unital", opts.unital_tol},
                     {"certificate", opts.certificate_tol},
                     {"fixed_point_rcond", opts.fixed_point_rcond}};
  r["warnings"] = warn;
  return dump(r);
}

std::string reachableStats(const ReachableResult& result, const ReachableOptions& opts) {
  ojson j;
  j["samples"] = opts.num_samples;
  j["seed"] = opts.seed;
  j["horizon"] = opts.horizon;
  j["control_bound"] = opts.control_bound;
  j["max_segments"] = opts.max_segments;
  j["grid"] = doubles(result.grid);
  j["max_norm"] = doubles(result.max_norm);
  j["min_norm"] = doubles(result.min_norm);
  j["unital"] = result.unital;
  if (result.nested_ball) {
    j["nested_ball"] = *result.nested_ball ? "pass" : "fail";
  } else {
    j["nested_ball"] = nullptr;
  }
  if (result.monotone_samples) {
    j["monotone_samples"] = *result.monotone_samples ? "pass" : "fail";
  } else {
    j["monotone_samples"] = nullptr;
  }
  return dump(j);
}

PiecewiseControl parseControls(std::string_view text, std::size_t numControls) {
  const json j = parseJson(text);
  if (!j.is_array() || j.empty()) {
    throw ParseError("control list must be a nonempty array of {duration, u} objects", "controls");
  }
  std::vector<ControlSegment> segs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "controls[" + std::to_string(i) + "]";
    const json& s = j[i];
    if (!s.is_object()) throw ParseError(quoted(f) + ": expected an object", f);
    for (const auto& [key, _] : s.items()) {
      if (key != "duration" && key != "u") throw ParseError("unknown field '" + f + "." + key + "'", f);
    }
    if (!s.contains("duration")) throw ParseError(quoted(f + ".duration") + ": missing", f);
    ControlSegment seg;
    seg.duration = number(s["duration"], f + ".duration");
    if (!(seg.duration > 0.0)) {
      throw ParseError(quoted(f + ".duration") + ": must be positive", f + ".duration");
    }
    seg.u = s.contains("u") ? vectorField(s["u"], f + ".u", static_cast<Eigen::Index>(numControls))
                            : Vector::Zero(static_cast<Eigen::Index>(numControls));
    segs.push_back(std::move(seg));
  }
  return PiecewiseControl(std::move(segs));
}

CoherenceVector parseState(std::string_view text, int N) {
  const json j = parseJson(text);
  const Eigen::Index n = static_cast<Eigen::Index>(N) * N - 1;
  CoherenceVector v(N, vectorField(j, "rho0", n));
  if (!v.inBall()) throw ParseError(quoted("rho0") + ": lies outside the coherence ball", "rho0");
  return v;
}

}  // namespace qmc
