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

#include "qmcontrol/affine_generator.hpp"
#include "qmcontrol/dissipator.hpp"
#include "qmcontrol/su_basis.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmc {

/// Controlled master equation in homogeneous coherence coordinates:
///   d/dt ρ̄ = (L̄_H0 + L̄_D + Σ_k u_k L̄_Hk) ρ̄
struct ControlSystem {
  int N = 2;
  AffineGenerator hamiltonian;            ///< L̄_H0
  AffineGenerator dissipator;             ///< L̄_D
  std::vector<AffineGenerator> controls;  ///< L̄_Hk, coherent (skew, no translation)
  std::optional<GksMatrix> gks;
  bool admissible = true;  ///< A is PSD (true when no GKS matrix is attached)

  /// λ-basis coefficients of H_0 and H_k, when known. Used for the
  /// unitary-controllability check.
  std::optional<Vector> h0;
  std::vector<Vector> hks;

  int size() const { return N * N - 1; }
  AffineGenerator drift() const { return hamiltonian + dissipator; }
  /// drift + Σ u_k controls_k; throws if u has the wrong length.
  AffineGenerator generatorAt(const Vector& u) const;
};

/// Validates sizes and that controls are coherent (skew-symmetric linear
/// part, zero translation, to 1e-12). Admissibility is taken from checkPsd.
ControlSystem makeControlSystem(int N, AffineGenerator hamiltonian, AffineGenerator dissipator,
                                std::vector<AffineGenerator> controls,
                                std::optional<GksMatrix> gks = std::nullopt);

/// General-N system from λ-basis Hamiltonian coefficients and a GKS matrix.
ControlSystem systemFromHamiltonians(const HermitianBasis& basis, const Vector& h0,
                                     const std::vector<Vector>& hks, const GksMatrix& a,
                                     AssemblyMode mode = AssemblyMode::Permissive);

struct ClosureOptions {
  double tol = 1e-9;
  int max_generations = 8;
};

struct LieClosure {
  std::vector<AffineGenerator> basis;  ///< orthonormal in the flattened-entry product
  int dim = 0;
  int generations = 0;
  bool converged = false;
};

/// Lie algebra generated by `generators` under the affine bracket. New
/// directions are accepted when their residual after projection on the
/// current span (unit-normalized candidate) exceeds tol.
LieClosure closure(std::span<const AffineGenerator> generators, const ClosureOptions& opts = {});

/// Residual norm of `x` (normalized) after projection on span(c.basis).
double spanResidual(const LieClosure& c, const AffineGenerator& x);

enum class AlgebraClass {
  AdSu,
  AdSuPlusIdentity,
  Sl,
  Gl,
  AdSuSemidirect,
  AdSuPlusIdentitySemidirect,
  SlSemidirect,
  GlSemidirect,
  Other,
};
std::string_view toString(AlgebraClass c);

struct ClassificationFeatures {
  int dim = 0;
  int linear_dim = 0;       ///< rank of the projection onto linear parts
  int translation_dim = 0;  ///< dim of span ∩ pure translations
  double trace_norm = 0.0;  ///< norm of the trace functional restricted to the span
  bool has_trace = false;
};

struct Classification {
  AlgebraClass label = AlgebraClass::Other;
  ClassificationFeatures features;
};

/// Throws InvalidArgument on an unconverged closure.
Classification classify(const LieClosure& c, int n, double tol = 1e-9);

/// Thrown when the bracket closure has not stabilized within max_generations.
class ClosureNotConverged : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

struct AccessibilityReport {
  bool accessible = false;
  int closure_dim = 0;
  int generations = 0;
  Classification classification;
};

/// Accessible iff Lie(drift, controls) is gl(n) or gl(n) ⋊ R^n.
AccessibilityReport accessibility(const ControlSystem& system, const ClosureOptions& opts = {});

enum class CertificateKind { Trace, Unital, FiniteTime };
std::string_view toString(CertificateKind k);

struct Certificate {
  CertificateKind kind;
  std::string statement;
  std::map<std::string, double> quantities;
  std::string note;
};

/// Noncontrollability certificates for a nonzero dissipator:
///  - Trace: tr(L_D) < 0, so det g(t) = exp(tr t) < 1 on the lifted group.
///  - Unital: L_D unital and nonzero; reachable sets are nested balls.
///  - FiniteTime: L_D nonzero; not T_f-controllable for any finite T_f.
std::vector<Certificate> noncontrollabilityCertificates(const ControlSystem& system,
                                                        double tol = 1e-12);

struct HamiltonianControllability {
  bool controllable = false;
  int dim = 0;
};

/// Lie closure of {-i H_0, -i H_k} computed on λ-basis coefficient vectors
/// with the bracket c_l = Σ a_j b_k f_jkl; controllable iff the dimension is n.
HamiltonianControllability hamiltonianControllability(const HermitianBasis& basis,
                                                      const Vector& h0,
                                                      const std::vector<Vector>& hks,
                                                      double tol = 1e-9);

// Structure constants of the twelve two-level generators M_1..M_12.

struct StructureConstant {
  int j, k, l;  ///< 1-based generator labels, j < k
  double value;
};

/// The table printed for gl(3,R) ⋊ R^3, transcribed literally.
const std::vector<StructureConstant>& listedStructureConstants();

/// Coefficients of [M_j, M_k] (1 <= j < k <= 12) in the M basis,
/// computed from the generator matrices. Entries below 1e-12 are omitted.
std::vector<StructureConstant> computedStructureConstants();

struct StructureConstantMismatch {
  int j, k, l;
  double listed;    ///< 0 when the coefficient is absent from the table
  double computed;
};

struct StructureConstantReport {
  int listed = 0;
  int matched = 0;
  int computed_nonzero = 0;
  double max_expansion_residual = 0.0;  ///< brackets must lie in span{M}
  std::vector<StructureConstantMismatch> mismatches;
  double tol = 1e-12;
  bool ok() const { return mismatches.empty() && max_expansion_residual <= tol; }
};

/// Compares the computed constants against `table`; every unlisted
/// coefficient must vanish.
StructureConstantReport verifyStructureConstants(const std::vector<StructureConstant>& table,
                                                 double tol = 1e-12);
StructureConstantReport verifyStructureConstants(double tol = 1e-12);

}  // namespace qmc
