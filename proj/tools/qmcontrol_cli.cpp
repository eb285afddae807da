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

// Command-line front end over the qmcontrol C API.

#include "qmcontrol/qmc.h"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;

struct CliError {
  int code;
  std::string message;
};

int exitCode(qmc_status s) {
  switch (s) {
    case QMC_OK:
      return 0;
    case QMC_ERR_PARSE:
    case QMC_ERR_INVALID_ARGUMENT:
      return kExitParse;
    case QMC_ERR_INADMISSIBLE:
      return 3;
    case QMC_ERR_NUMERICAL:
      return 4;
    default:
      return kExitFailure;
  }
}

void check(qmc_status s) {
  if (s != QMC_OK) throw CliError{exitCode(s), qmc_last_error()};
}

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { qmc_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

class System {
 public:
  System() = default;
  System(const System&) = delete;
  System& operator=(const System&) = delete;
  ~System() { qmc_system_free(p_); }
  qmc_system** out() { return &p_; }
  const qmc_system* get() const { return p_; }

 private:
  qmc_system* p_ = nullptr;
};

std::string readInput(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitParse, "cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void writeOutput(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw CliError{kExitFailure, "cannot write '" + path + "'"};
}

// Accepts "a,b,c" or "[a, b, c]".
std::vector<double> parseList(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string s;
  for (char ch : text) {
    if (ch != '[' && ch != ']' && ch != ' ' && ch != '\t') s += ch;
  }
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(',', start);
    const std::string tok = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw CliError{kExitParse, what + ": cannot parse '" + tok + "' as a number"};
    }
    out.push_back(v);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void loadSystem(System& sys, const std::string& path, bool permissive) {
  check(qmc_system_from_json(readInput(path).c_str(), permissive ? 1 : 0, sys.out()));
}

std::vector<double> initialState(const System& sys, const std::string& rho0) {
  const int N = qmc_system_dimension(sys.get());
  const std::size_t n = static_cast<std::size_t>(N * N - 1);
  if (rho0.empty()) return std::vector<double>(n, 0.0);
  std::vector<double> v = parseList(rho0, "--rho0");
  if (v.size() != n) {
    throw CliError{kExitParse, "--rho0: expected " + std::to_string(n) + " entries, got " +
                                   std::to_string(v.size())};
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controllability analysis and simulation of Markovian quantum master equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qmc_version()));

  std::string path;
  std::string out;
  bool permissive = false;

  auto* analyze = app.add_subcommand("analyze", "Analyze a system document and emit a JSON report");
  double tol = 0.0;
  analyze->add_option("path", path, "System document ('-' for stdin)")->required();
  analyze->add_option("--out", out, "Report file (default stdout)");
  analyze->add_option("--tol", tol, "Lie closure tolerance")->check(CLI::PositiveNumber);
  analyze->add_flag("--permissive", permissive, "Accept a GKS matrix that is not PSD");

  auto* simulate = app.add_subcommand("simulate", "Integrate a piecewise-constant control; write CSV");
  std::string controlsArg;
  std::string uArg;
  std::string rho0;
  double horizon = 1.0;
  int samples = 0;
  simulate->add_option("path", path, "System document ('-' for stdin)")->required();
  simulate->add_option("--controls", controlsArg,
                       "Control list: JSON text or file, [{\"duration\": T, \"u\": [...]}, ...]");
  simulate->add_option("--u", uArg, "Constant amplitudes 'u1,u2,...' held for --horizon");
  simulate->add_option("--horizon", horizon, "Duration for --u (default 1)");
  simulate->add_option("--samples", samples, "Output rows per segment (default 10)");
  simulate->add_option("--rho0", rho0, "Initial coherence vector 'r1,r2,...' (default 0)");
  simulate->add_option("--out", out, "CSV file (default stdout)");
  simulate->add_flag("--permissive", permissive, "Accept a GKS matrix that is not PSD");

  auto* reachable = app.add_subcommand("reachable", "Sample the reachable set with random controls");
  qmc_reachable_options ropts;
  qmc_reachable_defaults(&ropts);
  ropts.num_samples = 500;
  std::string statsPath;
  reachable->add_option("path", path, "System document ('-' for stdin)")->required();
  reachable->add_option("--rho0", rho0, "Initial coherence vector (default 0)");
  reachable->add_option("--horizon", ropts.horizon, "Time horizon (default 1)");
  reachable->add_option("--samples", ropts.num_samples, "Number of random controls (default 500)");
  reachable->add_option("--seed", ropts.seed, "RNG seed (default 0)");
  reachable->add_option("--bound", ropts.control_bound, "Amplitude bound (default 10)");
  reachable->add_option("--grid", ropts.grid_points, "Time grid intervals (default 10)");
  reachable->add_option("--threads", ropts.threads, "Worker threads (default: all cores)");
  reachable->add_option("--out", out, "Point-cloud CSV (default stdout)");
  reachable->add_option("--stats", statsPath, "Statistics JSON (default stderr)");
  reachable->add_flag("--permissive", permissive, "Accept a GKS matrix that is not PSD");

  auto* presetCmd = app.add_subcommand("preset", "Emit the system document of a two-level preset");
  std::string presetName;
  std::vector<std::string> params;
  presetCmd
      ->add_option("name", presetName,
                   "depolarizing | phase_flip | bit_flip | bit_phase_flip | amplitude_damping")
      ->required();
  presetCmd->add_option("--param", params, "Parameter as key=value (e.g. gamma=0.5, h0_3=1)");
  presetCmd->add_option("--out", out, "Document file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run the built-in invariant suite");
  bool strictTable = false;
  verify->add_flag("--strict-table", strictTable,
                   "Fail on every deviation from the printed structure-constant table");
  verify->add_option("--out", out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) {
      System sys;
      loadSystem(sys, path, permissive);
      LibString report;
      check(qmc_analyze(sys.get(), tol, report.out()));
      writeOutput(out, report.str());
    } else if (*simulate) {
      System sys;
      loadSystem(sys, path, permissive);
      std::string controls;
      if (!controlsArg.empty() && !uArg.empty()) {
        throw CliError{kExitParse, "use either --controls or --u, not both"};
      }
      if (!controlsArg.empty()) {
        const auto first = controlsArg.find_first_not_of(" \t\n");
        controls = first != std::string::npos && controlsArg[first] == '['
                       ? controlsArg
                       : readInput(controlsArg);
      } else {
        const std::vector<double> u =
            uArg.empty() ? std::vector<double>(static_cast<std::size_t>(qmc_system_num_controls(sys.get())), 0.0)
                         : parseList(uArg, "--u");
        std::string list;
        for (std::size_t i = 0; i < u.size(); ++i) list += (i ? "," : "") + fmt17(u[i]);
        controls = "[{\"duration\": " + fmt17(horizon) + ", \"u\": [" + list + "]}]";
      }
      const std::vector<double> init = initialState(sys, rho0);
      LibString csv;
      check(qmc_simulate(sys.get(), controls.c_str(), init.data(), init.size(),
                         samples > 0 ? samples : 10, csv.out()));
      writeOutput(out, csv.str());
    } else if (*reachable) {
      System sys;
      loadSystem(sys, path, permissive);
      const std::vector<double> init = initialState(sys, rho0);
      LibString csv;
      LibString stats;
      check(qmc_reachable(sys.get(), init.data(), init.size(), &ropts, csv.out(), stats.out()));
      writeOutput(out, csv.str());
      if (statsPath.empty()) {
        std::cerr << stats.str();
      } else {
        writeOutput(statsPath, stats.str());
      }
    } else if (*presetCmd) {
      std::string json = "{";
      for (std::size_t i = 0; i < params.size(); ++i) {
        const auto eq = params[i].find('=');
        if (eq == std::string::npos || eq == 0) {
          throw CliError{kExitParse, "--param: expected key=value, got '" + params[i] + "'"};
        }
        const std::vector<double> v = parseList(params[i].substr(eq + 1), "--param");
        if (v.size() != 1) throw CliError{kExitParse, "--param: expected one number in '" + params[i] + "'"};
        json += (i ? ", \"" : "\"") + params[i].substr(0, eq) + "\": " + fmt17(v[0]);
      }
      json += "}";
      System sys;
      check(qmc_system_from_preset(presetName.c_str(), json.c_str(), sys.out()));
      LibString doc;
      check(qmc_system_to_json(sys.get(), doc.out()));
      writeOutput(out, doc.str());
    } else if (*verify) {
      LibString report;
      int passed = 0;
      check(qmc_verify(strictTable ? 1 : 0, report.out(), &passed));
      writeOutput(out, report.str());
      if (!passed) {
        std::cerr << "verify: one or more invariants failed\n";
        return kExitFailure;
      }
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
  return 0;
}
