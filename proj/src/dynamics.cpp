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

#include "qmcontrol/dynamics.hpp"

#include "qmcontrol/dissipator.hpp"
#include "qmcontrol/su_basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <thread>

namespace qmc {

namespace {

constexpr double kBallSlack = 1e-6;
constexpr double kMonotoneSlack = 1e-10;

void checkInBall(const Vector& rho, int N, double t) {
  if (!(rho.squaredNorm() <= 1.0 - 1.0 / N + kBallSlack)) {
    throw NumericalFailure("state left the coherence ball at t = " + std::to_string(t) +
                           " (|rho|^2 = " + std::to_string(rho.squaredNorm()) + ")");
  }
}

void checkInputs(const ControlSystem& system, const PiecewiseControl& control,
                 const CoherenceVector& init) {
  if (init.dimension() != system.N) {
    throw InvalidArgument("initial state dimension does not match the system");
  }
  if (!init.inBall()) throw InvalidArgument("initial state is outside the coherence ball");
  for (const auto& seg : control.segments()) {
    if (seg.u.size() != static_cast<Eigen::Index>(system.controls.size())) {
      throw InvalidArgument("control segment has " + std::to_string(seg.u.size()) +
                            " amplitudes, system has " + std::to_string(system.controls.size()) +
                            " controls");
    }
  }
}

// Ball membership is exact physicality only at N = 2.
void requirePhysical(const CoherenceVector& init) {
  if (init.dimension() == 2) return;
  const PhysicalityReport p = isPhysical(init, gellmannBasis(init.dimension()));
  if (!p.physical) {
    throw InvalidArgument("initial state is not a density matrix (min eigenvalue " +
                          std::to_string(p.min_eigenvalue) + ")");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("expm: matrix must be square");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  // Padé coefficients divided by b_0, so V starts at the identity and exact
  // inputs such as 0 come back exact.
  static constexpr double b[] = {1.0, 0.5, 0.12, 0.018333333333333333, 0.0019927536231884057,
                                 0.00016304347826086958, 1.0351966873706003e-05,
                                 5.175983436853002e-07, 2.0431513566525008e-08,
                                 6.306022705717595e-10, 1.48377004840414e-11,
                                 2.529153491597966e-13, 2.8101705462199623e-15,
                                 1.5440497506703088e-17};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1)) throw NumericalFailure("expm: matrix has non-finite entries");
  int s = 0;
  if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const Matrix as = a / std::ldexp(1.0, s);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                         b[3] * a2 + b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

PiecewiseControl::PiecewiseControl(std::vector<ControlSegment> segments)
    : segments_(std::move(segments)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const double d = segments_[i].duration;
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw InvalidArgument("control segment " + std::to_string(i) +
                            ": duration must be positive and finite");
    }
  }
}

PiecewiseControl PiecewiseControl::constant(double duration, Vector u) {
  return PiecewiseControl({{duration, std::move(u)}});
}

double PiecewiseControl::totalDuration() const {
  double t = 0.0;
  for (const auto& s : segments_) t += s.duration;
  return t;
}

Trajectory propagate(const ControlSystem& system, const PiecewiseControl& control,
                     const CoherenceVector& init, int samplesPerSegment) {
  if (samplesPerSegment < 1) throw InvalidArgument("propagate: samplesPerSegment must be >= 1");
  if (control.empty()) throw InvalidArgument("propagate: control has no segments");
  checkInputs(system, control, init);
  requirePhysical(init);

  const int N = system.N;
  const Eigen::Index dim = system.size() + 1;
  const Vector x0 = init.homogeneous();
  Trajectory traj;
  Matrix g = Matrix::Identity(dim, dim);
  traj.times.push_back(0.0);
  traj.states.push_back(init);
  traj.propagators.push_back(g);
  traj.purities.push_back(purity(init));

  double segStart = 0.0;
  for (const auto& seg : control.segments()) {
    const Matrix x = system.generatorAt(seg.u).homogeneous();
    const Matrix step = expm(x * (seg.duration / samplesPerSegment));
    for (int s = 1; s <= samplesPerSegment; ++s) {
      g = step * g;
      const double t = segStart + seg.duration * s / samplesPerSegment;
      CoherenceVector state = CoherenceVector::fromHomogeneous(N, g * x0);
      checkInBall(state.rho(), N, t);
      traj.times.push_back(t);
      traj.purities.push_back(purity(state));
      traj.states.push_back(std::move(state));
      traj.propagators.push_back(g);
    }
    segStart += seg.duration;
  }
  return traj;
}

std::vector<CoherenceVector> statesAt(const ControlSystem& system,
                                      const PiecewiseControl& control,
                                      const CoherenceVector& init,
                                      const std::vector<double>& times) {
  checkInputs(system, control, init);
  const double total = control.totalDuration();
  const int N = system.N;
  std::vector<CoherenceVector> out;
  out.reserve(times.size());

  Vector x = init.homogeneous();
  double t = 0.0;
  std::size_t seg = 0;
  double segEnd = control.empty() ? 0.0 : control.segments()[0].duration;
  Matrix gen;
  bool genValid = false;
  for (double target : times) {
    if (target < t - 1e-12 || target > total * (1.0 + 1e-12) + 1e-12) {
      throw InvalidArgument("statesAt: times must be nondecreasing within [0, total duration]");
    }
    while (target > t) {
      while (seg < control.segments().size() && t >= segEnd) {
        ++seg;
        genValid = false;
        if (seg < control.segments().size()) segEnd += control.segments()[seg].duration;
      }
      if (seg >= control.segments().size()) break;
      if (!genValid) {
        gen = system.generatorAt(control.segments()[seg].u).homogeneous();
        genValid = true;
      }
      const double next = std::min(target, segEnd);
      x = expm(gen * (next - t)) * x;
      t = next;
    }
    checkInBall(x.tail(x.size() - 1), N, t);
    out.push_back(CoherenceVector::fromHomogeneous(N, x));
  }
  return out;
}

double determinantCheck(const Trajectory& traj, const ControlSystem& system) {
  const double tr = system.dissipator.linear().trace();
  const Eigen::Index n = system.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double det = traj.propagators[i].bottomRightCorner(n, n).determinant();
    worst = std::max(worst, std::abs(det - std::exp(tr * traj.times[i])));
  }
  return worst;
}

double purityRate(const ControlSystem& system, const CoherenceVector& v) {
  if (v.dimension() != system.N) throw InvalidArgument("purityRate: dimension mismatch");
  const AffineGenerator d = system.drift();
  return 2.0 * v.rho().dot(d.apply(v.rho(), v.rho0()));
}

PiecewiseControl randomControl(const ReachableOptions& opts, std::size_t numControls,
                               std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> count(1, std::max(1, opts.max_segments));
  std::exponential_distribution<double> weight(1.0);
  std::uniform_real_distribution<double> amp(-opts.control_bound, opts.control_bound);

  const int m = count(rng);
  std::vector<double> w(static_cast<std::size_t>(m));
  double sum = 0.0;
  for (auto& wi : w) {
    wi = weight(rng);
    sum += wi;
  }
  std::vector<ControlSegment> segs;
  segs.reserve(w.size());
  for (double wi : w) {
    ControlSegment s;
    s.duration = opts.horizon * wi / sum;
    s.u.resize(static_cast<Eigen::Index>(numControls));
    for (Eigen::Index k = 0; k < s.u.size(); ++k) s.u(k) = amp(rng);
    if (s.duration > 0.0) segs.push_back(std::move(s));
  }
  if (segs.empty()) segs.push_back({opts.horizon, Vector::Zero(static_cast<Eigen::Index>(numControls))});
  return PiecewiseControl(std::move(segs));
}

ReachableResult sampleReachable(const ControlSystem& system, const CoherenceVector& init,
                                const ReachableOptions& opts) {
  if (opts.num_samples < 1) throw InvalidArgument("sampleReachable: num_samples must be >= 1");
  if (!(opts.horizon > 0.0) || !std::isfinite(opts.horizon)) {
    throw InvalidArgument("sampleReachable: horizon must be positive");
  }
  if (opts.grid_points < 1) throw InvalidArgument("sampleReachable: grid_points must be >= 1");
  if (!(opts.control_bound >= 0.0)) {
    throw InvalidArgument("sampleReachable: control_bound must be nonnegative");
  }

  if (init.dimension() != system.N) {
    throw InvalidArgument("initial state dimension does not match the system");
  }
  if (!init.inBall()) throw InvalidArgument("initial state is outside the coherence ball");
  requirePhysical(init);

  ReachableResult r;
  for (int i = 0; i <= opts.grid_points; ++i) {
    r.grid.push_back(opts.horizon * i / opts.grid_points);
  }
  const auto numSamples = static_cast<std::size_t>(opts.num_samples);
  r.points.resize(numSamples);

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, numSamples));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned worker) {
    try {
      for (std::size_t s = worker; s < numSamples; s += threads) {
        const PiecewiseControl c = randomControl(opts, system.controls.size(), s);
        r.points[s] = statesAt(system, c, init, r.grid);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const std::size_t G = r.grid.size();
  r.max_norm.assign(G, 0.0);
  r.min_norm.assign(G, std::numeric_limits<double>::infinity());
  bool monotone = true;
  for (const auto& sample : r.points) {
    for (std::size_t g = 0; g < G; ++g) {
      const double nrm = sample[g].norm();
      r.max_norm[g] = std::max(r.max_norm[g], nrm);
      r.min_norm[g] = std::min(r.min_norm[g], nrm);
      if (g > 0 && nrm > sample[g - 1].norm() + kMonotoneSlack) monotone = false;
    }
  }
  r.unital = isUnital(system.dissipator);
  if (r.unital) {
    bool nested = true;
    for (std::size_t g = 1; g < G; ++g) {
      if (r.max_norm[g] > r.max_norm[g - 1] + kMonotoneSlack) nested = false;
    }
    r.nested_ball = nested;
    r.monotone_samples = monotone;
  }
  return r;
}

void writeTrajectoryCsv(std::ostream& os, const Trajectory& traj) {
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  os << "t";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",rho_" << j;
  os << ",purity,det_g\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << fmt17(traj.times[i]);
    for (Eigen::Index j = 0; j < n; ++j) os << ',' << fmt17(traj.states[i].rho()(j));
    os << ',' << fmt17(traj.purities[i]) << ','
       << fmt17(traj.propagators[i].bottomRightCorner(n, n).determinant()) << '\n';
  }
}

void writeReachableCsv(std::ostream& os, const ReachableResult& result) {
  const Eigen::Index n =
      result.points.empty() || result.points.front().empty() ? 0 : result.points[0][0].size();
  os << "sample,t";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",rho_" << j;
  os << ",norm\n";
  for (std::size_t s = 0; s < result.points.size(); ++s) {
    for (std::size_t g = 0; g < result.grid.size(); ++g) {
      const auto& v = result.points[s][g];
      os << s << ',' << fmt17(result.grid[g]);
      for (Eigen::Index j = 0; j < n; ++j) os << ',' << fmt17(v.rho()(j));
      os << ',' << fmt17(v.norm()) << '\n';
    }
  }
}

}  // namespace qmc
