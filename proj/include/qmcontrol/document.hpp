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

#pragma once

#include "qmcontrol/channels.hpp"
#include "qmcontrol/dynamics.hpp"
#include "qmcontrol/liealg.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmc {

/// Malformed input document. `line`/`column` are 1-based and 0 when the
/// problem is semantic rather than syntactic; `field` names the offending
/// path (e.g. "controls[1]") when known.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& message, std::string field = {}, int line = 0, int column = 0);
  const std::string& field() const { return field_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string field_;
  int line_;
  int column_;
};

enum class GeneratorConvention {
  Adjoint,    ///< Hamiltonian vectors act through the λ-basis adjoint generator
  MMatrices,  ///< N = 2 only: h maps to h_1 M_1 + h_2 M_2 + h_3 M_3
};

std::string_view toString(GeneratorConvention c);

/// One controlled system: Hamiltonian coefficient vectors plus the GKS
/// matrix split into real and imaginary parts.
struct SystemDocument {
  int schema_version = 1;
  int N = 2;
  GeneratorConvention convention = GeneratorConvention::Adjoint;
  Vector h0;
  std::vector<Vector> controls;
  Matrix A_real;
  Matrix A_imag;
  std::optional<ChannelPreset> preset;
};

/// Parses and validates a JSON system document. If a preset is named, it
/// fixes the system; any explicit fields must agree with it.
SystemDocument parseSystemDocument(std::string_view text);

/// Pretty-printed JSON (2-space indent, trailing newline).
std::string toJson(const SystemDocument& doc);

SystemDocument presetDocument(const ChannelPreset& spec);

/// Strict mode throws Inadmissible for a non-PSD A.
ControlSystem buildSystem(const SystemDocument& doc, AssemblyMode mode = AssemblyMode::Strict);

struct AnalyzeOptions {
  ClosureOptions closure;
  double psd_tol = 1e-10;
  double unital_tol = 1e-12;
  double certificate_tol = 1e-12;
  double fixed_point_rcond = 1e-10;
};

/// Full analysis report as pretty JSON. Deterministic in its inputs.
std::string analyzeReport(const ControlSystem& system, const AnalyzeOptions& opts = {},
                          const std::vector<std::string>& warnings = {});

/// Summary statistics of a reachable-set run as pretty JSON.
std::string reachableStats(const ReachableResult& result, const ReachableOptions& opts);

/// Control list from JSON: [{"duration": T, "u": [..]}, ...].
PiecewiseControl parseControls(std::string_view text, std::size_t numControls);

/// Coherence vector from a JSON array of n reals.
CoherenceVector parseState(std::string_view text, int N);

}  // namespace qmc
