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

#include "qmcontrol/channels.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qmc {

namespace {

AffineGenerator fromRows(std::initializer_list<double> rows) {
  Eigen::Matrix4d h;
  auto it = rows.begin();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) h(r, c) = *it++;
  }
  return AffineGenerator::fromHomogeneous(h);
}

const std::array<AffineGenerator, 12>& mTable() {
  // clang-format off
  static const std::array<AffineGenerator, 12> table = {
    fromRows({0, 0, 0, 0,   0, 0, 0, 0,   0, 0, 0,-1,   0, 0, 1, 0}),   // M1
    fromRows({0, 0, 0, 0,   0, 0, 0, 1,   0, 0, 0, 0,   0,-1, 0, 0}),   // M2
    fromRows({0, 0, 0, 0,   0, 0,-1, 0,   0, 1, 0, 0,   0, 0, 0, 0}),   // M3
    fromRows({0, 0, 0, 0,   0, 0, 1, 0,   0, 1, 0, 0,   0, 0, 0, 0}),   // M4
    fromRows({0, 0, 0, 0,   0, 0, 0, 0,   0, 0, 0, 0,  -2, 0, 0, 0}),   // M5
    fromRows({0, 0, 0, 0,   0, 0, 0, 1,   0, 0, 0, 0,   0, 1, 0, 0}),   // M6
    fromRows({0, 0, 0, 0,   0, 0, 0, 0,   2, 0, 0, 0,   0, 0, 0, 0}),   // M7
    fromRows({0, 0, 0, 0,   0, 0, 0, 0,   0, 0, 0, 1,   0, 0, 1, 0}),   // M8
    fromRows({0, 0, 0, 0,  -2, 0, 0, 0,   0, 0, 0, 0,   0, 0, 0, 0}),   // M9
    fromRows({0, 0, 0, 0,   0, 0, 0, 0,   0, 0,-1, 0,   0, 0, 0,-1}),   // M10
    fromRows({0, 0, 0, 0,   0,-1, 0, 0,   0, 0, 0, 0,   0, 0, 0,-1}),   // M11
    fromRows({0, 0, 0, 0,   0,-1, 0, 0,   0, 0,-1, 0,   0, 0, 0, 0}),   // M12
  };
  // clang-format on
  return table;
}

double param(const ChannelPreset& spec, const std::string& name, double fallback) {
  auto it = spec.params.find(name);
  return it == spec.params.end() ? fallback : it->second;
}

std::string rateName(Channel c) {
  switch (c) {
    case Channel::Depolarizing:
    case Channel::AmplitudeDamping:
      return "gamma";
    case Channel::PhaseFlip:
      return "a12";
    case Channel::BitFlip:
      return "a10";
    case Channel::BitPhaseFlip:
      return "a11";
  }
  return "gamma";
}

void validate(const ChannelPreset& spec) {
  const std::string rate = rateName(spec.channel);
  for (const auto& [name, value] : spec.params) {
    if (name != rate && name != "h0_3") {
      throw InvalidArgument("preset " + std::string(toString(spec.channel)) +
                            ": unknown parameter '" + name + "'");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw InvalidArgument("preset " + std::string(toString(spec.channel)) + ": parameter '" +
                            name + "' must be a nonnegative finite number");
    }
  }
}

}  // namespace

const AffineGenerator& mMatrix(int k) {
  if (k < 1 || k > 12) {
    throw InvalidArgument("mMatrix: index must be in 1..12, got " + std::to_string(k));
  }
  return mTable()[static_cast<std::size_t>(k - 1)];
}

AffineGenerator blochHamiltonian(const Eigen::Vector3d& h) {
  return h(0) * mMatrix(1) + h(1) * mMatrix(2) + h(2) * mMatrix(3);
}

AffineGenerator twoLevelDissipator(const TwoLevelParams& a) {
  AffineGenerator out(3);
  for (int k = 4; k <= 12; ++k) out += a[static_cast<std::size_t>(k - 4)] * mMatrix(k);
  return out;
}

std::string_view toString(Channel c) {
  switch (c) {
    case Channel::Depolarizing:
      return "depolarizing";
    case Channel::PhaseFlip:
      return "phase_flip";
    case Channel::BitFlip:
      return "bit_flip";
    case Channel::BitPhaseFlip:
      return "bit_phase_flip";
    case Channel::AmplitudeDamping:
      return "amplitude_damping";
  }
  return "unknown";
}

Channel channelFromString(std::string_view name) {
  for (Channel c : {Channel::Depolarizing, Channel::PhaseFlip, Channel::BitFlip,
                    Channel::BitPhaseFlip, Channel::AmplitudeDamping}) {
    if (toString(c) == name) return c;
  }
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

ChannelPreset defaultPreset(Channel c) {
  return {c, {{rateName(c), 1.0}, {"h0_3", 0.0}}};
}

TwoLevelParams presetTwoLevelParams(const ChannelPreset& spec) {
  validate(spec);
  const double rate = param(spec, rateName(spec.channel), 1.0);
  TwoLevelParams a{};
  switch (spec.channel) {
    case Channel::Depolarizing:
      a[6] = a[7] = a[8] = rate;
      break;
    case Channel::PhaseFlip:
      a[8] = rate;
      break;
    case Channel::BitFlip:
      a[6] = rate;
      break;
    case Channel::BitPhaseFlip:
      a[7] = rate;
      break;
    case Channel::AmplitudeDamping:
      // A = (γ/2) [[1, -i, 0], [i, 1, 0], [0, 0, 0]]
      a[6] = a[7] = rate / 2.0;
      a[1] = -rate / 2.0;
      break;
  }
  return a;
}

ControlSystem preset(const ChannelPreset& spec) {
  const TwoLevelParams a = presetTwoLevelParams(spec);
  const double h03 = param(spec, "h0_3", 0.0);
  std::vector<AffineGenerator> controls{mMatrix(1), mMatrix(2), mMatrix(3)};
  ControlSystem sys = makeControlSystem(2, h03 * mMatrix(3), twoLevelDissipator(a),
                                        std::move(controls), gksFromTwoLevel(a));
  sys.h0 = Eigen::Vector3d(0.0, 0.0, h03);
  sys.hks = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
  return sys;
}

}  // namespace qmc
