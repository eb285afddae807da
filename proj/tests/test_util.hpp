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

// Shared fixtures and independent oracles for the unit tests.

#include "qmcontrol/dissipator.hpp"
#include "qmcontrol/liealg.hpp"
#include "qmcontrol/states.hpp"
#include "qmcontrol/su_basis.hpp"

#include <Eigen/SVD>

#include <complex>
#include <random>
#include <vector>

namespace qmc::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(12345);
  return r;
}

inline double gauss() {
  static std::normal_distribution<double> d;
  return d(rng());
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Matrix randomMatrix(Eigen::Index r, Eigen::Index c) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = gauss();
  return m;
}

inline Vector randomVector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss();
  return v;
}

inline CMatrix randomComplex(Eigen::Index n) {
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = {gauss(), gauss()};
  return m;
}

inline CMatrix randomHermitian(Eigen::Index n) {
  const CMatrix m = randomComplex(n);
  return (m + m.adjoint()) / 2.0;
}

inline CMatrix randomPsd(Eigen::Index n, double scale = 1.0) {
  const CMatrix m = randomComplex(n);
  return scale * m * m.adjoint() / static_cast<double>(n);
}

/// Random density matrix: normalized B B† from a Ginibre draw.
inline CMatrix randomDensity(int N) {
  const CMatrix m = randomComplex(N);
  CMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

inline AffineGenerator randomGenerator(Eigen::Index n) {
  return AffineGenerator(randomMatrix(n, n), randomVector(n));
}

/// Dissipator read off the master equation term by term:
/// D(ρ) = ½ Σ a_jk (2 λ_j ρ λ_k − {λ_k λ_j, ρ}), projected onto the basis.
inline AffineGenerator directDissipator(const CMatrix& a, const HermitianBasis& b) {
  const int n = b.size();
  auto apply = [&](const CMatrix& rho) {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (a(j, k) == 0.0) continue;
        const CMatrix& lj = b.lambda(j);
        const CMatrix& lk = b.lambda(k);
        const CMatrix kj = lk * lj;
        out += 0.5 * a(j, k) * (2.0 * lj * rho * lk - kj * rho - rho * kj);
      }
    }
    return out;
  };
  AffineGenerator g(n);
  Matrix lin(n, n);
  Vector tr(n);
  for (int r = 0; r < n; ++r) {
    const CMatrix d = apply(b.lambda(r));
    for (int l = 0; l < n; ++l) lin(l, r) = (d * b.lambda(l)).trace().real();
  }
  const CMatrix d0 = apply(b.lambda0());
  for (int l = 0; l < n; ++l) tr(l) = (d0 * b.lambda(l)).trace().real();
  return AffineGenerator(lin, tr);
}

/// Complex L_jk and v_jk read off a single (j,k) term of the master equation.
inline std::pair<CMatrix, CVector> directTerm(const HermitianBasis& b, int j, int k) {
  const int n = b.size();
  auto apply = [&](const CMatrix& rho) {
    const CMatrix kj = b.lambda(k) * b.lambda(j);
    return CMatrix(0.5 * (2.0 * b.lambda(j) * rho * b.lambda(k) - kj * rho - rho * kj));
  };
  CMatrix l(n, n);
  CVector v(n);
  for (int r = 0; r < n; ++r) {
    const CMatrix d = apply(b.lambda(r));
    for (int m = 0; m < n; ++m) l(m, r) = (d * b.lambda(m)).trace();
  }
  const CMatrix d0 = apply(b.lambda0());
  for (int m = 0; m < n; ++m) v(m) = (d0 * b.lambda(m)).trace();
  return {l, v};
}

inline int numericalRank(const Matrix& m, double tol = 1e-9) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * std::max(1.0, s(0))) ++r;
  }
  return r;
}

/// Brute-force Lie closure: keep bracketing every pair in the current
/// spanning set until the SVD rank stops growing.
inline int bruteForceClosureDim(std::vector<Matrix> mats, int maxRounds = 10) {
  auto stack = [](const std::vector<Matrix>& ms) {
    Matrix s(ms.front().size(), static_cast<Eigen::Index>(ms.size()));
    for (std::size_t i = 0; i < ms.size(); ++i) {
      s.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(ms[i].data(), ms[i].size());
    }
    return s;
  };
  auto prune = [&](const std::vector<Matrix>& ms) {
    // Column basis via SVD, reshaped back to matrices.
    const Matrix s = stack(ms);
    Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeThinU);
    const int r = numericalRank(s);
    std::vector<Matrix> out;
    for (int i = 0; i < r; ++i) {
      out.push_back(Eigen::Map<const Matrix>(svd.matrixU().col(i).data(), ms.front().rows(),
                                             ms.front().cols()));
    }
    return out;
  };
  std::vector<Matrix> span = prune(mats);
  for (int round = 0; round < maxRounds; ++round) {
    std::vector<Matrix> next = span;
    for (std::size_t i = 0; i < span.size(); ++i) {
      for (std::size_t j = i + 1; j < span.size(); ++j) {
        next.push_back(span[i] * span[j] - span[j] * span[i]);
      }
    }
    next = prune(next);
    if (next.size() == span.size()) return static_cast<int>(span.size());
    span = std::move(next);
  }
  return -1;
}

}  // namespace qmc::test
