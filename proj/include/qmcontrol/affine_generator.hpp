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

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace qmc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Thrown when an input violates a documented precondition (dimensions,
/// index ranges, Hermiticity).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a GKS matrix is not positive semidefinite and the caller
/// asked for strict handling.
class Inadmissible : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Thrown when a simulation leaves the admissible state space or a
/// numerical routine cannot produce a meaningful result.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Affine vector field x -> linear * x + translation * x0 on R^n, stored as
/// its two blocks. The homogeneous form is the (n+1)x(n+1) matrix
///
///     [ 0            0      ]
///     [ translation  linear ]
///
/// which acts linearly on (x0, x). Brackets of affine generators are affine,
/// so the type is closed under `bracket`.
class AffineGenerator {
 public:
  AffineGenerator() = default;
  explicit AffineGenerator(Eigen::Index n);
  AffineGenerator(Matrix linear, Vector translation);

  /// Throws InvalidArgument unless the first row is exactly zero.
  static AffineGenerator fromHomogeneous(const Matrix& h);
  /// Inverse of flatten(): first n*n entries column-major linear, then translation.
  static AffineGenerator fromFlat(Eigen::Index n, const Vector& flat);
  /// Ī: identity on the linear block, zero translation.
  static AffineGenerator identity(Eigen::Index n);

  Eigen::Index size() const { return linear_.rows(); }
  const Matrix& linear() const { return linear_; }
  const Vector& translation() const { return translation_; }
  Matrix& linear() { return linear_; }
  Vector& translation() { return translation_; }

  Matrix homogeneous() const;
  Vector flatten() const;

  /// Frobenius norm of the homogeneous matrix.
  double norm() const;
  bool isZero(double tol) const { return norm() <= tol; }
  /// Applies the field to (x0, x).
  Vector apply(const Vector& x, double x0) const { return linear_ * x + translation_ * x0; }

  AffineGenerator& operator+=(const AffineGenerator& other);
  AffineGenerator& operator-=(const AffineGenerator& other);
  AffineGenerator& operator*=(double s);

  friend AffineGenerator operator+(AffineGenerator a, const AffineGenerator& b) { return a += b; }
  friend AffineGenerator operator-(AffineGenerator a, const AffineGenerator& b) { return a -= b; }
  friend AffineGenerator operator*(AffineGenerator a, double s) { return a *= s; }
  friend AffineGenerator operator*(double s, AffineGenerator a) { return a *= s; }
  friend AffineGenerator operator-(AffineGenerator a) { return a *= -1.0; }

 private:
  Matrix linear_;
  Vector translation_;
};

/// Affine Lie bracket: [X, Y] has linear part XY - YX and translation
/// X.linear * Y.translation - Y.linear * X.translation.
AffineGenerator bracket(const AffineGenerator& x, const AffineGenerator& y);

/// Flattened-entry inner product (trace metric on homogeneous matrices).
double inner(const AffineGenerator& x, const AffineGenerator& y);

void requireSameSize(const AffineGenerator& x, const AffineGenerator& y, const char* what);

}  // namespace qmc
