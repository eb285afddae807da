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

#include "qmcontrol/liealg.hpp"
#include "qmcontrol/states.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace qmc {

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
Matrix expm(const Matrix& a);

struct ControlSegment {
  double duration = 0.0;
  Vector u;
};

/// Piecewise-constant control. Durations must be positive and finite.
class PiecewiseControl {
 public:
  PiecewiseControl() = default;
  explicit PiecewiseControl(std::vector<ControlSegment> segments);
  /// One segment of length `duration` with constant amplitudes `u`.
  static PiecewiseControl constant(double duration, Vector u);

  const std::vector<ControlSegment>& segments() const { return segments_; }
  double totalDuration() const;
  bool empty() const { return segments_.empty(); }

 private:
  std::vector<ControlSegment> segments_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CoherenceVector> states;
  std::vector<Matrix> propagators;  ///< homogeneous g(t), g(0) = I
  std::vector<double> purities;
};

/// Integrates the controlled system exactly per segment:
/// g <- exp((drift + Σ u_k L_k) dt) g, sampled `samplesPerSegment` times per
/// segment (plus t = 0). Throws NumericalFailure if a state leaves the
/// ball by more than 1e-6 and InvalidArgument for malformed inputs.
Trajectory propagate(const ControlSystem& system, const PiecewiseControl& control,
                     const CoherenceVector& init, int samplesPerSegment = 1);

/// States at the given nondecreasing times in [0, total duration].
std::vector<CoherenceVector> statesAt(const ControlSystem& system,
                                      const PiecewiseControl& control,
                                      const CoherenceVector& init,
                                      const std::vector<double>& times);

/// max_t |det(linear block of g(t)) - exp(tr(L_D) t)|
double determinantCheck(const Trajectory& traj, const ControlSystem& system);

/// d tr(ρ²)/dt = 2 <drift ρ̄, ρ̄> with all controls at zero. Coherent parts
/// contribute nothing.
double purityRate(const ControlSystem& system, const CoherenceVector& v);

struct ReachableOptions {
  double horizon = 1.0;
  int num_samples = 100;
  std::uint64_t seed = 0;
  double control_bound = 10.0;
  int grid_points = 10;   ///< time grid has grid_points + 1 entries including t = 0
  int max_segments = 8;   ///< segment count uniform in 1..max_segments
  unsigned threads = 0;   ///< 0 = hardware concurrency
};

struct ReachableResult {
  std::vector<double> grid;
  /// points[s][g]: state of sample s at grid time g
  std::vector<std::vector<CoherenceVector>> points;
  std::vector<double> max_norm;  ///< per grid time, over samples
  std::vector<double> min_norm;
  bool unital = false;
  /// For unital systems: max_norm nonincreasing in t (slack 1e-10).
  std::optional<bool> nested_ball;
  /// For unital systems: every sample's norm nonincreasing in t.
  std::optional<bool> monotone_samples;
};

/// Random piecewise-constant control for sample `index`; deterministic in
/// (seed, index).
PiecewiseControl randomControl(const ReachableOptions& opts, std::size_t numControls,
                               std::uint64_t index);

/// Monte Carlo exploration of the reachable set. The result does not
/// depend on the number of worker threads.
ReachableResult sampleReachable(const ControlSystem& system, const CoherenceVector& init,
                                const ReachableOptions& opts);

/// CSV with header t,rho_1..rho_n,purity,det_g; 17 significant digits.
void writeTrajectoryCsv(std::ostream& os, const Trajectory& traj);

/// CSV with header sample,t,rho_1..rho_n,norm.
void writeReachableCsv(std::ostream& os, const ReachableResult& result);

}  // namespace qmc
