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

#include "qmcontrol/su_basis.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace qmc {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// tr(a b) without forming the product.
std::complex<double> traceProduct(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace

HermitianBasis::HermitianBasis(int N, std::vector<CMatrix> lambdas)
    : N_(N), n_(N * N - 1), lambdas_(std::move(lambdas)) {
  if (N < 2) throw InvalidArgument("HermitianBasis: N must be >= 2");
  if (static_cast<int>(lambdas_.size()) != n_) {
    throw InvalidArgument("HermitianBasis: expected N^2-1 basis matrices");
  }
  for (const auto& m : lambdas_) {
    if (m.rows() != N || m.cols() != N) {
      throw InvalidArgument("HermitianBasis: basis matrices must be N x N");
    }
  }
  tensors_ = structureTensors(lambdas_);
}

CMatrix HermitianBasis::lambda0() const {
  return CMatrix::Identity(N_, N_) * rho0();
}

double HermitianBasis::rho0() const { return 1.0 / std::sqrt(static_cast<double>(N_)); }

HermitianBasis gellmannBasis(int N) {
  if (N < 2) {
    throw InvalidArgument("gellmannBasis: N must be >= 2, got " + std::to_string(N));
  }
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(N * N - 1));
  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      CMatrix m = CMatrix::Zero(N, N);
      m(j, k) = s;
      m(k, j) = s;
      out.push_back(std::move(m));
    }
  }
  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      CMatrix m = CMatrix::Zero(N, N);
      m(j, k) = -kI * s;
      m(k, j) = kI * s;
      out.push_back(std::move(m));
    }
  }
  for (int l = 1; l < N; ++l) {
    CMatrix m = CMatrix::Zero(N, N);
    const double c = std::sqrt(2.0 / (l * (l + 1.0))) * s;
    for (int i = 0; i < l; ++i) m(i, i) = c;
    m(l, l) = -l * c;
    out.push_back(std::move(m));
  }
  return HermitianBasis(N, std::move(out));
}

StructureTensors structureTensors(const std::vector<CMatrix>& lambdas) {
  const int n = static_cast<int>(lambdas.size());
  StructureTensors t{Tensor3(n), Tensor3(n)};
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      const CMatrix prod = lambdas[j] * lambdas[k];
      const CMatrix prodRev = lambdas[k] * lambdas[j];
      const CMatrix comm = prod - prodRev;
      const CMatrix anti = prod + prodRev;
      for (int l = 0; l < n; ++l) {
        const double fv = (-kI * traceProduct(comm, lambdas[l])).real();
        const double dv = traceProduct(anti, lambdas[l]).real();
        t.f(j, k, l) = fv;
        t.f(k, j, l) = -fv;
        t.d(j, k, l) = dv;
        t.d(k, j, l) = dv;
      }
    }
  }
  return t;
}

AffineGenerator adjointGenerator(const HermitianBasis& basis, const Vector& h) {
  const int n = basis.size();
  if (h.size() != n) {
    throw InvalidArgument("adjointGenerator: h has length " + std::to_string(h.size()) +
                          ", expected " + std::to_string(n));
  }
  const Tensor3& f = basis.f();
  Matrix g = Matrix::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    if (h(l) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) g(k, j) += h(l) * f(l, j, k);
    }
  }
  return {std::move(g), Vector::Zero(n)};
}

CMatrix hamiltonianMatrix(const HermitianBasis& basis, const Vector& h) {
  if (h.size() != basis.size()) {
    throw InvalidArgument("hamiltonianMatrix: coefficient vector has wrong length");
  }
  const int N = basis.dimension();
  CMatrix H = CMatrix::Zero(N, N);
  for (int l = 0; l < basis.size(); ++l) H += h(l) * basis.lambda(l);
  return H;
}

}  // namespace qmc
