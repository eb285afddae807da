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

#include "qmcontrol/su_basis.hpp"

namespace qmc {

/// Vector of coherences ρ_j = tr(ρ λ_j) of an N-level density matrix,
/// together with the fixed homogeneous component ρ_0 = N^{-1/2}.
///
/// Construction only checks dimensions; physical states satisfy
/// ‖rho‖² ≤ 1 - 1/N, which `inBall` tests.
class CoherenceVector {
 public:
  CoherenceVector(int N, Vector rho);
  /// Builds from (ρ_0, ρ_1..ρ_n); the first entry is ignored.
  static CoherenceVector fromHomogeneous(int N, const Vector& homogeneous);
  static CoherenceVector maximallyMixed(int N);

  int dimension() const { return N_; }
  Eigen::Index size() const { return rho_.size(); }
  double rho0() const;
  const Vector& rho() const { return rho_; }
  Vector homogeneous() const;

  double norm() const { return rho_.norm(); }
  /// ‖ρ̄‖² = ρ_0² + ‖rho‖²
  double homogeneousNormSquared() const;
  bool inBall(double tol = 1e-9) const;

 private:
  int N_;
  Vector rho_;
};

/// Expansion coefficients of a Hermitian, unit-trace matrix. Throws
/// InvalidArgument if rho is not Hermitian or trace != 1 (tolerance 1e-10).
CoherenceVector toCoherence(const CMatrix& rho, const HermitianBasis& basis);

CMatrix fromCoherence(const CoherenceVector& v, const HermitianBasis& basis);

/// tr(ρ²) = 1/N + ‖rho‖²
double purity(const CoherenceVector& v);

struct PhysicalityReport {
  bool physical = false;
  double min_eigenvalue = 0.0;
};

/// Positivity of the reconstructed density matrix (eigenvalue test). Ball
/// membership is necessary but not sufficient for N > 2.
PhysicalityReport isPhysical(const CoherenceVector& v, const HermitianBasis& basis,
                             double tol = 1e-9);

}  // namespace qmc
