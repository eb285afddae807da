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

#include "qmcontrol/qmc.h"

#include "qmcontrol/document.hpp"
#include "qmcontrol/verify.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <sstream>
#include <string>

struct qmc_system {
  qmc::SystemDocument doc;
  qmc::ControlSystem system;
};

namespace {

thread_local std::string g_last_error;

char* copyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qmc_status fail(qmc_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class F>
qmc_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QMC_OK;
  } catch (const qmc::ParseError& e) {
    std::string msg = e.what();
    if (e.line() > 0) {
      msg = "line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) + ": " + msg;
    }
    return fail(QMC_ERR_PARSE, msg);
  } catch (const qmc::Inadmissible& e) {
    return fail(QMC_ERR_INADMISSIBLE, e.what());
  } catch (const qmc::InvalidArgument& e) {
    return fail(QMC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const qmc::NumericalFailure& e) {
    return fail(QMC_ERR_NUMERICAL, e.what());
  } catch (const std::exception& e) {
    return fail(QMC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QMC_ERR_INTERNAL, "unknown error");
  }
}

qmc::CoherenceVector stateFrom(const qmc_system* sys, const double* rho0, size_t len) {
  const auto n = static_cast<size_t>(sys->system.size());
  if (len != n) {
    throw qmc::ParseError("rho0: expected " + std::to_string(n) + " entries, got " +
                              std::to_string(len),
                          "rho0");
  }
  qmc::Vector v(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = rho0 ? rho0[i] : 0.0;
  qmc::CoherenceVector s(sys->system.N, v);
  if (!s.inBall()) throw qmc::ParseError("rho0 lies outside the coherence ball", "rho0");
  return s;
}

#define QMC_REQUIRE(cond, msg)                                   \
  do {                                                           \
    if (!(cond)) return fail(QMC_ERR_INVALID_ARGUMENT, (msg));   \
  } while (0)

}  // namespace

extern "C" {

const char* qmc_last_error(void) { return g_last_error.c_str(); }

const char* qmc_version(void) { return "0.1.0"; }

qmc_status qmc_system_from_json(const char* text, int permissive, qmc_system** out) {
  QMC_REQUIRE(text && out, "qmc_system_from_json: null argument");
  *out = nullptr;
  return guard([&] {
    auto s = std::make_unique<qmc_system>();
    s->doc = qmc::parseSystemDocument(text);
    s->system = qmc::buildSystem(s->doc, permissive ? qmc::AssemblyMode::Permissive
                                                    : qmc::AssemblyMode::Strict);
    *out = s.release();
  });
}

qmc_status qmc_system_from_preset(const char* name, const char* params_json, qmc_system** out) {
  QMC_REQUIRE(name && out, "qmc_system_from_preset: null argument");
  *out = nullptr;
  return guard([&] {
    qmc::ChannelPreset spec;
    try {
      spec.channel = qmc::channelFromString(name);
    } catch (const qmc::InvalidArgument& e) {
      throw qmc::ParseError(e.what(), "preset.name");
    }
    if (params_json && *params_json) {
      nlohmann::json p;
      try {
        p = nlohmann::json::parse(params_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw qmc::ParseError(std::string("preset parameters: ") + e.what(), "preset.params");
      }
      if (!p.is_object()) throw qmc::ParseError("preset parameters must be a JSON object", "preset.params");
      for (const auto& [k, v] : p.items()) {
        if (!v.is_number()) throw qmc::ParseError("preset parameter '" + k + "' must be a number", "preset.params");
        spec.params[k] = v.get<double>();
      }
    }
    auto s = std::make_unique<qmc_system>();
    try {
      s->doc = qmc::presetDocument(spec);
    } catch (const qmc::InvalidArgument& e) {
      throw qmc::ParseError(e.what(), "preset.params");
    }
    s->system = qmc::buildSystem(s->doc);
    *out = s.release();
  });
}

void qmc_system_free(qmc_system* sys) { delete sys; }

int qmc_system_dimension(const qmc_system* sys) { return sys ? sys->system.N : 0; }

int qmc_system_num_controls(const qmc_system* sys) {
  return sys ? static_cast<int>(sys->system.controls.size()) : 0;
}

qmc_status qmc_system_to_json(const qmc_system* sys, char** out) {
  QMC_REQUIRE(sys && out, "qmc_system_to_json: null argument");
  return guard([&] { *out = copyString(qmc::toJson(sys->doc)); });
}

qmc_status qmc_analyze(const qmc_system* sys, double closure_tol, char** report) {
  QMC_REQUIRE(sys && report, "qmc_analyze: null argument");
  return guard([&] {
    qmc::AnalyzeOptions opts;
    if (closure_tol > 0.0) opts.closure.tol = closure_tol;
    *report = copyString(qmc::analyzeReport(sys->system, opts));
  });
}

qmc_status qmc_simulate(const qmc_system* sys, const char* controls_json, const double* rho0,
                        size_t rho0_len, int samples_per_segment, char** csv) {
  QMC_REQUIRE(sys && controls_json && csv, "qmc_simulate: null argument");
  return guard([&] {
    const qmc::CoherenceVector init = stateFrom(sys, rho0, rho0_len);
    const qmc::PiecewiseControl c = qmc::parseControls(controls_json, sys->system.controls.size());
    if (samples_per_segment < 1) {
      throw qmc::ParseError("samples per segment must be >= 1", "samples");
    }
    const qmc::Trajectory t = qmc::propagate(sys->system, c, init, samples_per_segment);
    std::ostringstream os;
    qmc::writeTrajectoryCsv(os, t);
    *csv = copyString(os.str());
  });
}

void qmc_reachable_defaults(qmc_reachable_options* opts) {
  if (!opts) return;
  const qmc::ReachableOptions d;
  opts->horizon = d.horizon;
  opts->num_samples = d.num_samples;
  opts->seed = d.seed;
  opts->control_bound = d.control_bound;
  opts->grid_points = d.grid_points;
  opts->max_segments = d.max_segments;
  opts->threads = d.threads;
}

qmc_status qmc_reachable(const qmc_system* sys, const double* rho0, size_t rho0_len,
                         const qmc_reachable_options* opts, char** cloud_csv, char** stats_json) {
  QMC_REQUIRE(sys && opts, "qmc_reachable: null argument");
  return guard([&] {
    const qmc::CoherenceVector init = stateFrom(sys, rho0, rho0_len);
    qmc::ReachableOptions o;
    o.horizon = opts->horizon;
    o.num_samples = opts->num_samples;
    o.seed = opts->seed;
    o.control_bound = opts->control_bound;
    o.grid_points = opts->grid_points;
    o.max_segments = opts->max_segments;
    o.threads = opts->threads;
    if (o.num_samples < 1 || !(o.horizon > 0.0) || o.grid_points < 1 || o.max_segments < 1 ||
        !(o.control_bound >= 0.0)) {
      throw qmc::ParseError(
          "reachable options: samples, grid points and segments must be >= 1, horizon > 0, "
          "control bound >= 0");
    }
    const qmc::ReachableResult r = qmc::sampleReachable(sys->system, init, o);
    std::string csv;
    if (cloud_csv) {
      std::ostringstream os;
      qmc::writeReachableCsv(os, r);
      csv = os.str();
    }
    const std::string stats = stats_json ? qmc::reachableStats(r, o) : std::string();
    if (cloud_csv) *cloud_csv = copyString(csv);
    if (stats_json) *stats_json = copyString(stats);
  });
}

qmc_status qmc_verify(int strict_table, char** report, int* passed) {
  QMC_REQUIRE(report && passed, "qmc_verify: null argument");
  return guard([&] {
    const qmc::VerifyReport r = qmc::runVerify(strict_table != 0);
    *passed = r.passed() ? 1 : 0;
    *report = copyString(qmc::toJson(r));
  });
}

void qmc_string_free(char* s) { std::free(s); }

}  // extern "C"
