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

#include "qmcontrol/liealg.hpp"

#include "qmcontrol/channels.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace qmc {

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns true
// and appends the new direction when the normalized residual exceeds tol.
bool tryExtend(std::vector<Vector>& q, const Vector& v, double tol) {
  const double nv = v.norm();
  if (nv == 0.0 || !std::isfinite(nv)) return false;
  Vector w = v / nv;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& qi : q) w -= qi.dot(w) * qi;
  }
  const double r = w.norm();
  if (r <= tol) return false;
  q.push_back(w / r);
  return true;
}

int numericalRank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) ++rank;
  }
  return rank;
}

}  // namespace

AffineGenerator ControlSystem::generatorAt(const Vector& u) const {
  if (u.size() != static_cast<Eigen::Index>(controls.size())) {
    throw InvalidArgument("control vector has length " + std::to_string(u.size()) +
                          ", system has " + std::to_string(controls.size()) + " controls");
  }
  AffineGenerator g = drift();
  for (std::size_t k = 0; k < controls.size(); ++k) {
    g += u(static_cast<Eigen::Index>(k)) * controls[k];
  }
  return g;
}

ControlSystem makeControlSystem(int N, AffineGenerator hamiltonian, AffineGenerator dissipator,
                                std::vector<AffineGenerator> controls,
                                std::optional<GksMatrix> gks) {
  if (N < 2) throw InvalidArgument("ControlSystem: N must be >= 2");
  const int n = N * N - 1;
  if (hamiltonian.size() != n || dissipator.size() != n) {
    throw InvalidArgument("ControlSystem: drift generators must have size N^2-1 = " +
                          std::to_string(n));
  }
  for (std::size_t k = 0; k < controls.size(); ++k) {
    const auto& c = controls[k];
    if (c.size() != n) {
      throw InvalidArgument("ControlSystem: control " + std::to_string(k) + " has wrong size");
    }
    if (c.translation().norm() > 1e-12 ||
        (c.linear() + c.linear().transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidArgument("ControlSystem: control " + std::to_string(k) +
                            " is not coherent (needs skew-symmetric linear part, no translation)");
    }
  }
  if (gks && gks->size() != n) {
    throw InvalidArgument("ControlSystem: GKS matrix must be n x n");
  }
  ControlSystem s;
  s.N = N;
  s.hamiltonian = std::move(hamiltonian);
  s.dissipator = std::move(dissipator);
  s.controls = std::move(controls);
  s.admissible = !gks || checkPsd(*gks).is_psd;
  s.gks = std::move(gks);
  return s;
}

ControlSystem systemFromHamiltonians(const HermitianBasis& basis, const Vector& h0,
                                     const std::vector<Vector>& hks, const GksMatrix& a,
                                     AssemblyMode mode) {
  std::vector<AffineGenerator> controls;
  controls.reserve(hks.size());
  for (const auto& h : hks) controls.push_back(adjointGenerator(basis, h));
  ControlSystem s = makeControlSystem(basis.dimension(), adjointGenerator(basis, h0),
                                      assembleDissipator(a, basis, mode), std::move(controls), a);
  s.h0 = h0;
  s.hks = hks;
  return s;
}

LieClosure closure(std::span<const AffineGenerator> generators, const ClosureOptions& opts) {
  if (generators.empty()) throw InvalidArgument("closure: generator list is empty");
  const Eigen::Index n = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != n) throw InvalidArgument("closure: generators have mixed dimensions");
  }
  const std::size_t maxDim = static_cast<std::size_t>(n * n + n);

  std::vector<Vector> q;
  for (const auto& g : generators) tryExtend(q, g.flatten(), opts.tol);

  LieClosure out;
  std::size_t frontierBegin = 0;
  int generation = 0;
  while (true) {
    if (frontierBegin == q.size() || q.size() == maxDim) {
      out.converged = true;
      break;
    }
    if (generation >= opts.max_generations) break;
    ++generation;
    const std::size_t frontierEnd = q.size();
    bool grew = false;
    for (std::size_t i = frontierBegin; i < frontierEnd && q.size() < maxDim; ++i) {
      const AffineGenerator x = AffineGenerator::fromFlat(n, q[i]);
      for (std::size_t j = 0; j < frontierEnd && q.size() < maxDim; ++j) {
        if (j >= frontierBegin && j <= i) continue;  // antisymmetry within the frontier
        const AffineGenerator y = AffineGenerator::fromFlat(n, q[j]);
        grew = tryExtend(q, bracket(x, y).flatten(), opts.tol) || grew;
      }
    }
    if (grew) out.generations = generation;
    frontierBegin = frontierEnd;
  }

  out.dim = static_cast<int>(q.size());
  out.basis.reserve(q.size());
  for (const auto& v : q) out.basis.push_back(AffineGenerator::fromFlat(n, v));
  return out;
}

double spanResidual(const LieClosure& c, const AffineGenerator& x) {
  const double nx = x.norm();
  if (nx == 0.0) return 0.0;
  Vector w = x.flatten() / nx;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : c.basis) w -= b.flatten().dot(w) * b.flatten();
  }
  return w.norm();
}

std::string_view toString(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::AdSu:
      return "ad_su";
    case AlgebraClass::AdSuPlusIdentity:
      return "ad_su + span(I)";
    case AlgebraClass::Sl:
      return "sl(n)";
    case AlgebraClass::Gl:
      return "gl(n)";
    case AlgebraClass::AdSuSemidirect:
      return "ad_su x| R^n";
    case AlgebraClass::AdSuPlusIdentitySemidirect:
      return "(ad_su + span(I)) x| R^n";
    case AlgebraClass::SlSemidirect:
      return "sl(n) x| R^n";
    case AlgebraClass::GlSemidirect:
      return "gl(n) x| R^n";
    case AlgebraClass::Other:
      return "other";
  }
  return "other";
}

Classification classify(const LieClosure& c, int n, double tol) {
  if (!c.converged) throw InvalidArgument("classify: closure did not converge");
  Classification out;
  auto& f = out.features;
  f.dim = c.dim;
  if (c.dim > 0) {
    Matrix lin(static_cast<Eigen::Index>(n) * n, c.dim);
    Vector traces(c.dim);
    for (int i = 0; i < c.dim; ++i) {
      const auto& b = c.basis[static_cast<std::size_t>(i)];
      if (b.size() != n) throw InvalidArgument("classify: closure dimension mismatch");
      lin.col(i) = Eigen::Map<const Vector>(b.linear().data(), static_cast<Eigen::Index>(n) * n);
      traces(i) = b.linear().trace();
    }
    f.linear_dim = numericalRank(lin, tol);
    f.trace_norm = traces.norm();
  }
  f.translation_dim = f.dim - f.linear_dim;
  f.has_trace = f.trace_norm > tol;

  const int su = n;  // dim ad_su(N) = N^2 - 1 = n
  const int nn = n * n;
  const bool t0 = f.translation_dim == 0;
  const bool tn = f.translation_dim == n;
  const int ld = f.linear_dim;
  auto& L = out.label;
  L = AlgebraClass::Other;
  if (ld == su && !f.has_trace) {
    if (t0) L = AlgebraClass::AdSu;
    if (tn) L = AlgebraClass::AdSuSemidirect;
  } else if (ld == su + 1 && f.has_trace) {
    if (t0) L = AlgebraClass::AdSuPlusIdentity;
    if (tn) L = AlgebraClass::AdSuPlusIdentitySemidirect;
  } else if (ld == nn - 1 && !f.has_trace) {
    if (t0) L = AlgebraClass::Sl;
    if (tn) L = AlgebraClass::SlSemidirect;
  } else if (ld == nn && f.has_trace) {
    if (t0) L = AlgebraClass::Gl;
    if (tn) L = AlgebraClass::GlSemidirect;
  }
  return out;
}

AccessibilityReport accessibility(const ControlSystem& system, const ClosureOptions& opts) {
  std::vector<AffineGenerator> gens;
  gens.reserve(system.controls.size() + 1);
  gens.push_back(system.drift());
  gens.insert(gens.end(), system.controls.begin(), system.controls.end());
  const LieClosure c = closure(gens, opts);
  if (!c.converged) {
    throw ClosureNotConverged("accessibility: Lie closure did not converge within " +
                              std::to_string(opts.max_generations) + " generations");
  }
  AccessibilityReport r;
  r.closure_dim = c.dim;
  r.generations = c.generations;
  r.classification = classify(c, system.size(), opts.tol);
  r.accessible = r.classification.label == AlgebraClass::Gl ||
                 r.classification.label == AlgebraClass::GlSemidirect;
  return r;
}

std::string_view toString(CertificateKind k) {
  switch (k) {
    case CertificateKind::Trace:
      return "trace";
    case CertificateKind::Unital:
      return "unital";
    case CertificateKind::FiniteTime:
      return "finite_time";
  }
  return "unknown";
}

std::vector<Certificate> noncontrollabilityCertificates(const ControlSystem& system,
                                                        double tol) {
  std::vector<Certificate> out;
  const AffineGenerator& ld = system.dissipator;
  if (ld.isZero(tol)) return out;

  const double trace = ld.linear().trace();
  const double n = static_cast<double>(system.size());
  if (trace < -tol) {
    out.push_back({CertificateKind::Trace,
                   "tr(L_D) < 0: det g(t) = exp(tr(L_D) t) < 1 for t > 0, so the lifted "
                   "system cannot generate the whole group",
                   {{"trace", trace}, {"alpha", trace / n}, {"det_rate", trace}},
                   ""});
  }
  if (isUnital(ld, tol)) {
    out.push_back({CertificateKind::Unital,
                   "L_D unital and nonzero: never controllable; the norm of the coherence "
                   "vector is nonincreasing and reachable sets are nested balls",
                   {{"translation_norm", ld.translation().norm()}},
                   "reachable set from rho_i is contained in the ball of radius |rho_i|"});
  }
  Certificate ft{CertificateKind::FiniteTime,
                 "L_D nonzero: never small-time controllable and not T_f-controllable for any "
                 "finite T_f",
                 {{"dissipator_norm", ld.norm()}},
                 ""};
  if (auto fp = fixedPoint(system.drift(), system.N)) {
    const double p = purity(*fp);
    ft.quantities["fixed_point_purity"] = p;
    if (std::abs(p - 1.0) <= 1e-9) {
      ft.note =
          "fixed point is a pure state: closure of reachable set is the full ball "
          "asymptotically, reached only as t -> infinity";
    } else {
      ft.note = "fixed point is mixed; the ball boundary is not reachable";
    }
  } else {
    ft.note = "no unique fixed point of the uncontrolled dynamics";
  }
  out.push_back(std::move(ft));
  return out;
}

HamiltonianControllability hamiltonianControllability(const HermitianBasis& basis,
                                                      const Vector& h0,
                                                      const std::vector<Vector>& hks,
                                                      double tol) {
  if (hks.empty()) {
    throw InvalidArgument("hamiltonianControllability: at least one control Hamiltonian needed");
  }
  const int n = basis.size();
  const Tensor3& f = basis.f();
  auto br = [&](const Vector& a, const Vector& b) {
    Vector c = Vector::Zero(n);
    for (int j = 0; j < n; ++j) {
      if (a(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (b(k) == 0.0) continue;
        const double ab = a(j) * b(k);
        for (int l = 0; l < n; ++l) c(l) += ab * f(j, k, l);
      }
    }
    return c;
  };
  std::vector<Vector> q;
  if (h0.size() != n) throw InvalidArgument("hamiltonianControllability: h0 has wrong length");
  tryExtend(q, h0, tol);
  for (const auto& h : hks) {
    if (h.size() != n) throw InvalidArgument("hamiltonianControllability: h_k has wrong length");
    tryExtend(q, h, tol);
  }
  std::size_t frontierBegin = 0;
  while (frontierBegin < q.size() && q.size() < static_cast<std::size_t>(n)) {
    const std::size_t frontierEnd = q.size();
    for (std::size_t i = frontierBegin; i < frontierEnd; ++i) {
      for (std::size_t j = 0; j < frontierEnd; ++j) {
        if (j >= frontierBegin && j <= i) continue;
        tryExtend(q, br(q[i], q[j]), tol);
      }
    }
    frontierBegin = frontierEnd;
  }
  return {static_cast<int>(q.size()) == n, static_cast<int>(q.size())};
}

const std::vector<StructureConstant>& listedStructureConstants() {
  // clang-format off
  static const std::vector<StructureConstant> table = {
    {1, 2, 3, 1}, {1, 4, 6, 1}, {1, 5, 7, 1}, {1, 8, 12, 1}, {1, 11, 8, 1}, {2, 3, 1, 1},
    {2, 6, 10, 1}, {2, 8, 4, 1}, {2, 12, 6, 1}, {3, 4, 11, 1}, {3, 6, 8, 1}, {3, 7, 9, 1},
    {3, 10, 4, 1}, {4, 8, 2, 1},
    {4, 10, 3, 1}, {5, 8, 7, 1}, {5, 10, 5, 1}, {5, 11, 5, 1}, {6, 9, 5, 1}, {6, 12, 2, 1},
    {7, 8, 5, 1}, {7, 10, 7, 1}, {7, 12, 7, 1}, {8, 11, 1, 1}, {9, 11, 9, 1}, {9, 12, 9, 1},
    {1, 3, 2, -1}, {1, 6, 4, -1}, {1, 7, 5, -1}, {1, 8, 11, -1}, {1, 12, 8, -1}, {2, 4, 8, -1},
    {2, 5, 9, -1}, {2, 6, 11, -1}, {2, 9, 5, -1}, {2, 10, 6, -1}, {3, 4, 10, -1}, {3, 8, 6, -1},
    {3, 9, 7, -1}, {3, 11, 4, -1}, {4, 6, 1, -1}, {4, 7, 9, -1}, {4, 9, 7, -1}, {4, 11, 3, -1},
    {5, 6, 9, -1}, {6, 8, 3, -1}, {6, 10, 2, -1}, {8, 12, 1, -1},
  };
  // clang-format on
  return table;
}

namespace {

struct Expansion {
  // coefficients[j][k] is the M-basis expansion of [M_j, M_k] (1-based)
  std::array<std::array<Vector, 13>, 13> coefficients;
  double max_residual = 0.0;
};

const Expansion& mExpansion() {
  static const Expansion e = [] {
    Expansion out;
    Matrix basis(16, 12);
    for (int k = 1; k <= 12; ++k) {
      const Matrix h = mMatrix(k).homogeneous();
      basis.col(k - 1) = Eigen::Map<const Vector>(h.data(), 16);
    }
    const auto qr = basis.colPivHouseholderQr();
    for (int j = 1; j <= 12; ++j) {
      for (int k = j + 1; k <= 12; ++k) {
        const Matrix h = bracket(mMatrix(j), mMatrix(k)).homogeneous();
        const Vector rhs = Eigen::Map<const Vector>(h.data(), 16);
        Vector c = qr.solve(rhs);
        out.max_residual = std::max(out.max_residual, (basis * c - rhs).cwiseAbs().maxCoeff());
        out.coefficients[j][k] = std::move(c);
      }
    }
    return out;
  }();
  return e;
}

}  // namespace

std::vector<StructureConstant> computedStructureConstants() {
  std::vector<StructureConstant> out;
  const auto& e = mExpansion();
  for (int j = 1; j <= 12; ++j) {
    for (int k = j + 1; k <= 12; ++k) {
      for (int l = 1; l <= 12; ++l) {
        const double c = e.coefficients[j][k](l - 1);
        if (std::abs(c) > 1e-12) out.push_back({j, k, l, c});
      }
    }
  }
  return out;
}

StructureConstantReport verifyStructureConstants(const std::vector<StructureConstant>& table,
                                                 double tol) {
  std::map<std::tuple<int, int, int>, double> listed;
  for (const auto& s : table) listed[{s.j, s.k, s.l}] = s.value;
  const auto& e = mExpansion();
  StructureConstantReport r;
  r.listed = static_cast<int>(table.size());
  r.max_expansion_residual = e.max_residual;
  for (int j = 1; j <= 12; ++j) {
    for (int k = j + 1; k <= 12; ++k) {
      for (int l = 1; l <= 12; ++l) {
        const double c = e.coefficients[j][k](l - 1);
        if (std::abs(c) > tol) ++r.computed_nonzero;
        auto it = listed.find({j, k, l});
        const double want = it == listed.end() ? 0.0 : it->second;
        if (std::abs(c - want) > tol) {
          r.mismatches.push_back({j, k, l, want, std::abs(c) > tol ? c : 0.0});
        } else if (it != listed.end()) {
          ++r.matched;
        }
      }
    }
  }
  r.tol = tol;
  return r;
}

StructureConstantReport verifyStructureConstants(double tol) {
  return verifyStructureConstants(listedStructureConstants(), tol);
}

}  // namespace qmc
