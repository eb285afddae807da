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

#include "qmcontrol/states.hpp"

#include <cmath>
#include <string>

namespace qmc {

CoherenceVector::CoherenceVector(int N, Vector rho) : N_(N), rho_(std::move(rho)) {
  if (N < 2) throw InvalidArgument("CoherenceVector: N must be >= 2");
  if (rho_.size() != N * N - 1) {
    throw InvalidArgument("CoherenceVector: expected " + std::to_string(N * N - 1) +
                          " components, got " + std::to_string(rho_.size()));
  }
}

CoherenceVector CoherenceVector::fromHomogeneous(int N, const Vector& homogeneous) {
  if (homogeneous.size() != N * N) {
    throw InvalidArgument("CoherenceVector: homogeneous vector must have N^2 entries");
  }
  return {N, homogeneous.tail(N * N - 1)};
}

CoherenceVector CoherenceVector::maximallyMixed(int N) {
  return {N, Vector::Zero(N * N - 1)};
}

double CoherenceVector::rho0() const { return 1.0 / std::sqrt(static_cast<double>(N_)); }

Vector CoherenceVector::homogeneous() const {
  Vector h(rho_.size() + 1);
  h(0) = rho0();
  h.tail(rho_.size()) = rho_;
  return h;
}

double CoherenceVector::homogeneousNormSquared() const {
  return 1.0 / N_ + rho_.squaredNorm();
}

bool CoherenceVector::inBall(double tol) const {
  return rho_.squaredNorm() <= 1.0 - 1.0 / N_ + tol;
}

CoherenceVector toCoherence(const CMatrix& rho, const HermitianBasis& basis) {
  const int N = basis.dimension();
  if (rho.rows() != N || rho.cols() != N) {
    throw InvalidArgument("toCoherence: density matrix must be " + std::to_string(N) + "x" +
                          std::to_string(N));
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidArgument("toCoherence: density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-10) {
    throw InvalidArgument("toCoherence: density matrix trace must be 1");
  }
  Vector v(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    v(j) = (rho.array() * basis.lambda(j).transpose().array()).sum().real();
  }
  return {N, std::move(v)};
}

CMatrix fromCoherence(const CoherenceVector& v, const HermitianBasis& basis) {
  const int N = basis.dimension();
  if (v.dimension() != N) {
    throw InvalidArgument("fromCoherence: coherence vector and basis dimensions differ");
  }
  CMatrix rho = CMatrix::Identity(N, N) / static_cast<double>(N);
  for (int j = 0; j < basis.size(); ++j) rho += v.rho()(j) * basis.lambda(j);
  return rho;
}

double purity(const CoherenceVector& v) { return v.homogeneousNormSquared(); }

PhysicalityReport isPhysical(const CoherenceVector& v, const HermitianBasis& basis, double tol) {
  const CMatrix rho = fromCoherence(v, basis);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  const double minEig = es.eigenvalues().minCoeff();
  return {minEig >= -tol, minEig};
}

}  // namespace qmc
