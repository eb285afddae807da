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
#include "qmcontrol/states.hpp"
#include "qmcontrol/su_basis.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qmc {

/// Hermitian n x n coefficient matrix A = (a_jk) of a GKS/Lindblad
/// dissipator written in the traceless Hermitian basis.
class GksMatrix {
 public:
  /// Throws InvalidArgument if `a` is not square or not Hermitian to 1e-12.
  explicit GksMatrix(CMatrix a);
  static GksMatrix zero(int n) { return GksMatrix(CMatrix::Zero(n, n)); }
  /// Builds A = a_real + i a_imag; a_real must be symmetric and a_imag antisymmetric.
  static GksMatrix fromParts(const Matrix& aReal, const Matrix& aImag);

  Eigen::Index size() const { return a_.rows(); }
  const CMatrix& matrix() const { return a_; }
  std::complex<double> operator()(Eigen::Index j, Eigen::Index k) const { return a_(j, k); }

 private:
  CMatrix a_;
};

/// (L_jk)_lr = -1/4 Σ_m [(f_jmr + i d_jmr) f_kml + (f_kmr - i d_kmr) f_jml]
CMatrix buildLjk(const HermitianBasis& basis, int j, int k);

/// v_jk = (i / √N) (f_jk1, ..., f_jkn)
CVector buildVjk(const HermitianBasis& basis, int j, int k);

/// Σ_jk a_jk (L_jk, v_jk) kept complex; the imaginary parts cancel for a
/// Hermitian A.
struct ComplexAffine {
  CMatrix linear;
  CVector translation;
  double imaginaryResidue() const;
};
ComplexAffine assembleDissipatorComplex(const GksMatrix& a, const HermitianBasis& basis);

enum class AssemblyMode { Permissive, Strict };

/// Real dissipator generator L̄_D assembled pairwise over j ≤ k:
/// (2-δ_jk) a^R_jk [0, L^R_jk] + 2 a^I_jk [i v_jk, -L^I_jk].
/// The translation is stored raw; it multiplies ρ_0 when applied.
/// Strict mode throws InvalidArgument if A is not PSD (tolerance 1e-10).
AffineGenerator assembleDissipator(const GksMatrix& a, const HermitianBasis& basis,
                                   AssemblyMode mode = AssemblyMode::Permissive);

struct PsdReport {
  bool is_psd = false;
  bool on_boundary = false;
  double min_eigenvalue = 0.0;
  Vector eigenvalues;  ///< ascending
};
PsdReport checkPsd(const GksMatrix& a, double tol = 1e-10);

/// Two-level parameterization (a_4, ..., a_12) =
/// (a^R_xy, a^I_xy, a^R_xz, a^I_xz, a^R_yz, a^I_yz, a_xx, a_yy, a_zz).
using TwoLevelParams = std::array<double, 9>;

/// A with upper triangle a^R + i a^I in the (x, y, z) ordering.
GksMatrix gksFromTwoLevel(const TwoLevelParams& a);
TwoLevelParams twoLevelFromGks(const GksMatrix& a);

struct MinorCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
struct MinorsReport {
  std::vector<MinorCheck> minors;  ///< three 1x1, three 2x2, one 3x3
  bool all_hold = false;
};
/// Principal-minor inequalities of the two-level A. A diagnostic only; the
/// eigenvalue test in checkPsd is authoritative.
MinorsReport checkMinors2Level(const TwoLevelParams& a, double tol = 1e-12);

bool isUnital(const AffineGenerator& l, double tol = 1e-12);

struct TraceSplit {
  double alpha = 0.0;         ///< tr(linear) / n
  AffineGenerator traceless;  ///< l - alpha Ī
};
TraceSplit splitTrace(const AffineGenerator& l);

/// Solves linear * rho + translation * ρ_0 = 0. Returns nullopt when the
/// reciprocal condition number of the linear part is below `rcondThreshold`.
std::optional<CoherenceVector> fixedPoint(const AffineGenerator& drift, int N,
                                          double rcondThreshold = 1e-10);

}  // namespace qmc
