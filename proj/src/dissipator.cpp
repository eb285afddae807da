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

#include "qmcontrol/dissipator.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace qmc {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void checkIndex(const HermitianBasis& basis, int j, int k, const char* what) {
  if (j < 0 || k < 0 || j >= basis.size() || k >= basis.size()) {
    throw InvalidArgument(std::string(what) + ": index out of range (j=" + std::to_string(j) +
                          ", k=" + std::to_string(k) + ", n=" + std::to_string(basis.size()) +
                          ")");
  }
}

void checkSize(const GksMatrix& a, const HermitianBasis& basis, const char* what) {
  if (a.size() != basis.size()) {
    throw InvalidArgument(std::string(what) + ": GKS matrix is " + std::to_string(a.size()) +
                          "x" + std::to_string(a.size()) + ", basis needs n=" +
                          std::to_string(basis.size()));
  }
}

}  // namespace

GksMatrix::GksMatrix(CMatrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) throw InvalidArgument("GksMatrix: matrix must be square");
  if (a_.size() > 0 && (a_ - a_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("GksMatrix: matrix is not Hermitian");
  }
}

GksMatrix GksMatrix::fromParts(const Matrix& aReal, const Matrix& aImag) {
  if (aReal.rows() != aReal.cols() || aImag.rows() != aReal.rows() ||
      aImag.cols() != aReal.cols()) {
    throw InvalidArgument("GksMatrix: real and imaginary parts must be square and equal size");
  }
  CMatrix a(aReal.rows(), aReal.cols());
  a.real() = aReal;
  a.imag() = aImag;
  return GksMatrix(std::move(a));
}

CMatrix buildLjk(const HermitianBasis& basis, int j, int k) {
  checkIndex(basis, j, k, "buildLjk");
  const int n = basis.size();
  const Tensor3& f = basis.f();
  const Tensor3& d = basis.d();
  CMatrix L = CMatrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      const double fkml = f(k, m, l);
      const double fjml = f(j, m, l);
      if (fkml == 0.0 && fjml == 0.0) continue;
      for (int r = 0; r < n; ++r) {
        L(l, r) += std::complex<double>(f(j, m, r), d(j, m, r)) * fkml +
                   std::complex<double>(f(k, m, r), -d(k, m, r)) * fjml;
      }
    }
  }
  return -0.25 * L;
}

CVector buildVjk(const HermitianBasis& basis, int j, int k) {
  checkIndex(basis, j, k, "buildVjk");
  const int n = basis.size();
  CVector v(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(basis.dimension()));
  for (int l = 0; l < n; ++l) v(l) = kI * s * basis.f()(j, k, l);
  return v;
}

double ComplexAffine::imaginaryResidue() const {
  double r = 0.0;
  if (linear.size() > 0) r = linear.imag().cwiseAbs().maxCoeff();
  if (translation.size() > 0) r = std::max(r, translation.imag().cwiseAbs().maxCoeff());
  return r;
}

ComplexAffine assembleDissipatorComplex(const GksMatrix& a, const HermitianBasis& basis) {
  checkSize(a, basis, "assembleDissipatorComplex");
  const int n = basis.size();
  ComplexAffine out{CMatrix::Zero(n, n), CVector::Zero(n)};
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const auto ajk = a(j, k);
      if (ajk == 0.0) continue;
      out.linear += ajk * buildLjk(basis, j, k);
      out.translation += ajk * buildVjk(basis, j, k);
    }
  }
  return out;
}

AffineGenerator assembleDissipator(const GksMatrix& a, const HermitianBasis& basis,
                                   AssemblyMode mode) {
  checkSize(a, basis, "assembleDissipator");
  if (mode == AssemblyMode::Strict) {
    const PsdReport psd = checkPsd(a);
    if (!psd.is_psd) {
      throw Inadmissible("assembleDissipator: GKS matrix is not positive semidefinite (min "
                            "eigenvalue " + std::to_string(psd.min_eigenvalue) + ")");
    }
  }
  const int n = basis.size();
  AffineGenerator out(n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      const double re = a(j, k).real();
      const double im = a(j, k).imag();
      if (re == 0.0 && im == 0.0) continue;
      const CMatrix L = buildLjk(basis, j, k);
      if (re != 0.0) out.linear() += (j == k ? 1.0 : 2.0) * re * L.real();
      if (im != 0.0) {
        out.linear() -= 2.0 * im * L.imag();
        out.translation() += 2.0 * im * (kI * buildVjk(basis, j, k)).real();
      }
    }
  }
  return out;
}

PsdReport checkPsd(const GksMatrix& a, double tol) {
  PsdReport r;
  if (a.size() == 0) {
    r.is_psd = r.on_boundary = true;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  r.eigenvalues = es.eigenvalues();
  r.min_eigenvalue = r.eigenvalues.minCoeff();
  r.is_psd = r.min_eigenvalue >= -tol;
  r.on_boundary = std::abs(r.min_eigenvalue) <= tol;
  return r;
}

GksMatrix gksFromTwoLevel(const TwoLevelParams& p) {
  using C = std::complex<double>;
  CMatrix a(3, 3);
  a << p[6], C(p[0], p[1]), C(p[2], p[3]),
       C(p[0], -p[1]), p[7], C(p[4], p[5]),
       C(p[2], -p[3]), C(p[4], -p[5]), p[8];
  return GksMatrix(std::move(a));
}

TwoLevelParams twoLevelFromGks(const GksMatrix& g) {
  if (g.size() != 3) throw InvalidArgument("twoLevelFromGks: expected a 3x3 GKS matrix");
  return {g(0, 1).real(), g(0, 1).imag(), g(0, 2).real(), g(0, 2).imag(),
          g(1, 2).real(), g(1, 2).imag(), g(0, 0).real(), g(1, 1).real(),
          g(2, 2).real()};
}

MinorsReport checkMinors2Level(const TwoLevelParams& p, double tol) {
  const double a4 = p[0], a5 = p[1], a6 = p[2], a7 = p[3], a8 = p[4], a9 = p[5];
  const double a10 = p[6], a11 = p[7], a12 = p[8];
  MinorsReport r;
  auto add = [&](std::string name, double lhs, double rhs) {
    r.minors.push_back({std::move(name), lhs, rhs, lhs - rhs >= -tol});
  };
  add("a10 >= 0", a10, 0.0);
  add("a11 >= 0", a11, 0.0);
  add("a12 >= 0", a12, 0.0);
  add("a10*a11 >= a4^2+a5^2", a10 * a11, a4 * a4 + a5 * a5);
  add("a10*a12 >= a6^2+a7^2", a10 * a12, a6 * a6 + a7 * a7);
  add("a11*a12 >= a8^2+a9^2", a11 * a12, a8 * a8 + a9 * a9);
  const double det3 = a10 * a11 * a12 - a10 * (a8 * a8 + a9 * a9) - a11 * (a6 * a6 + a7 * a7) -
                      a12 * (a4 * a4 + a5 * a5) + 2.0 * a4 * (a6 * a8 + a7 * a9) -
                      2.0 * a5 * (a6 * a9 - a7 * a8);
  add("det(A) >= 0", det3, 0.0);
  r.all_hold = true;
  for (const auto& m : r.minors) r.all_hold = r.all_hold && m.holds;
  return r;
}

bool isUnital(const AffineGenerator& l, double tol) { return l.translation().norm() <= tol; }

TraceSplit splitTrace(const AffineGenerator& l) {
  const auto n = l.size();
  TraceSplit s;
  s.alpha = n > 0 ? l.linear().trace() / static_cast<double>(n) : 0.0;
  s.traceless = l - s.alpha * AffineGenerator::identity(n);
  return s;
}

std::optional<CoherenceVector> fixedPoint(const AffineGenerator& drift, int N,
                                          double rcondThreshold) {
  if (drift.size() != N * N - 1) {
    throw InvalidArgument("fixedPoint: generator size does not match N^2-1");
  }
  Eigen::JacobiSVD<Matrix> svd(drift.linear(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0 || sv(sv.size() - 1) / sv(0) < rcondThreshold) {
    return std::nullopt;
  }
  const double rho0 = 1.0 / std::sqrt(static_cast<double>(N));
  Vector rho = svd.solve(-drift.translation() * rho0);
  return CoherenceVector(N, std::move(rho));
}

}  // namespace qmc
