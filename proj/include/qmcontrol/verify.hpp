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

#include <string>
#include <vector>

namespace qmc {

struct VerifyItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyItem> items;
  bool passed() const;
};

/// Built-in invariant suite: bracket expansion of the two-level generators,
/// structure-constant table, L_jk symmetry, dissipator convention bridge,
/// subalgebra taxonomy, determinant law on random systems.
///
/// The printed structure-constant table carries known errata; with
/// `strictTable` false only deviations beyond those errata fail.
VerifyReport runVerify(bool strictTable = false);

/// Pretty JSON rendering.
std::string toJson(const VerifyReport& r);

}  // namespace qmc
