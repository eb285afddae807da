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

#include "qmcontrol/affine_generator.hpp"

#include <cmath>
#include <string>

namespace qmc {

AffineGenerator::AffineGenerator(Eigen::Index n)
    : linear_(Matrix::Zero(n, n)), translation_(Vector::Zero(n)) {}

AffineGenerator::AffineGenerator(Matrix linear, Vector translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (linear_.rows() != linear_.cols() || linear_.rows() != translation_.size()) {
    throw InvalidArgument("AffineGenerator: linear part must be n x n and translation length n");
  }
}

AffineGenerator AffineGenerator::fromHomogeneous(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() < 2) {
    throw InvalidArgument("AffineGenerator: homogeneous matrix must be square with size >= 2");
  }
  if (!h.row(0).isZero(0.0)) {
    throw InvalidArgument("AffineGenerator: first row of homogeneous form must be zero");
  }
  const Eigen::Index n = h.rows() - 1;
  return {h.bottomRightCorner(n, n), h.col(0).tail(n)};
}

AffineGenerator AffineGenerator::fromFlat(Eigen::Index n, const Vector& flat) {
  if (flat.size() != n * n + n) {
    throw InvalidArgument("AffineGenerator: flat vector has wrong length");
  }
  Matrix lin = Eigen::Map<const Matrix>(flat.data(), n, n);
  return {std::move(lin), flat.tail(n)};
}

AffineGenerator AffineGenerator::identity(Eigen::Index n) {
  return {Matrix::Identity(n, n), Vector::Zero(n)};
}

Matrix AffineGenerator::homogeneous() const {
  const Eigen::Index n = size();
  Matrix h = Matrix::Zero(n + 1, n + 1);
  h.bottomRightCorner(n, n) = linear_;
  h.col(0).tail(n) = translation_;
  return h;
}

Vector AffineGenerator::flatten() const {
  const Eigen::Index n = size();
  Vector v(n * n + n);
  v.head(n * n) = Eigen::Map<const Vector>(linear_.data(), n * n);
  v.tail(n) = translation_;
  return v;
}

double AffineGenerator::norm() const {
  return std::sqrt(linear_.squaredNorm() + translation_.squaredNorm());
}

AffineGenerator& AffineGenerator::operator+=(const AffineGenerator& other) {
  requireSameSize(*this, other, "operator+=");
  linear_ += other.linear_;
  translation_ += other.translation_;
  return *this;
}

AffineGenerator& AffineGenerator::operator-=(const AffineGenerator& other) {
  requireSameSize(*this, other, "operator-=");
  linear_ -= other.linear_;
  translation_ -= other.translation_;
  return *this;
}

AffineGenerator& AffineGenerator::operator*=(double s) {
  linear_ *= s;
  translation_ *= s;
  return *this;
}

void requireSameSize(const AffineGenerator& x, const AffineGenerator& y, const char* what) {
  if (x.size() != y.size()) {
    throw InvalidArgument(std::string(what) + ": generator dimension mismatch (" +
                          std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
}

AffineGenerator bracket(const AffineGenerator& x, const AffineGenerator& y) {
  requireSameSize(x, y, "bracket");
  Matrix lin = x.linear() * y.linear() - y.linear() * x.linear();
  Vector tr = x.linear() * y.translation() - y.linear() * x.translation();
  return {std::move(lin), std::move(tr)};
}

double inner(const AffineGenerator& x, const AffineGenerator& y) {
  requireSameSize(x, y, "inner");
  return (x.linear().array() * y.linear().array()).sum() + x.translation().dot(y.translation());
}

}  // namespace qmc
