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

#include <vector>

namespace qmc {

/// Dense rank-3 tensor with n^3 real entries, index order (j, k, l).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int size() const { return n_; }
  double operator()(int j, int k, int l) const { return data_[index(j, k, l)]; }
  double& operator()(int j, int k, int l) { return data_[index(j, k, l)]; }

 private:
  std::size_t index(int j, int k, int l) const {
    return (static_cast<std::size_t>(j) * n_ + k) * n_ + l;
  }
  int n_ = 0;
  std::vector<double> data_;
};

struct StructureTensors {
  Tensor3 f;  ///< f_jkl = -i tr([λ_j, λ_k] λ_l), fully antisymmetric
  Tensor3 d;  ///< d_jkl = tr({λ_j, λ_k} λ_l), fully symmetric
};

/// Generalized Gell-Mann basis of an N-level system, normalized so that
/// tr(λ_j λ_k) = δ_jk. Ordering: symmetric off-diagonal matrices (j<k,
/// lexicographic), antisymmetric off-diagonal ones in the same order, then
/// the N-1 diagonal ones. For N = 2 this gives (σx, σy, σz)/√2.
///
/// Indices are 0-based throughout the C++ API.
class HermitianBasis {
 public:
  HermitianBasis(int N, std::vector<CMatrix> lambdas);

  int dimension() const { return N_; }  ///< Hilbert dimension N
  int size() const { return n_; }       ///< n = N^2 - 1
  const CMatrix& lambda(int j) const { return lambdas_.at(static_cast<std::size_t>(j)); }
  const std::vector<CMatrix>& lambdas() const { return lambdas_; }
  /// λ_0 = N^{-1/2} I
  CMatrix lambda0() const;
  double rho0() const;

  const Tensor3& f() const { return tensors_.f; }
  const Tensor3& d() const { return tensors_.d; }

 private:
  int N_;
  int n_;
  std::vector<CMatrix> lambdas_;
  StructureTensors tensors_;
};

HermitianBasis gellmannBasis(int N);

/// Computes f and d numerically from the basis matrices.
StructureTensors structureTensors(const std::vector<CMatrix>& lambdas);

/// Real representation of -i ad_H on coherence vectors for H = Σ_l h_l λ_l:
/// linear part G with G_kj = Σ_l h_l f_ljk, zero translation. This is the
/// generator of d/dt tr(ρ λ_k) under ρ̇ = -i[H, ρ].
AffineGenerator adjointGenerator(const HermitianBasis& basis, const Vector& h);

/// Σ_l h_l λ_l.
CMatrix hamiltonianMatrix(const HermitianBasis& basis, const Vector& h);

}  // namespace qmc
