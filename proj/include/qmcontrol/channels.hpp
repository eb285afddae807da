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

#include "qmcontrol/affine_generator.hpp"
#include "qmcontrol/liealg.hpp"

#include <map>
#include <string>
#include <string_view>

namespace qmc {

/// The printed two-level generator M_k (k = 1..12) as a 3-dimensional
/// affine generator. M_1..M_3 are the coherent rotations, M_4..M_12 the
/// dissipative directions matching (a_4, ..., a_12).
const AffineGenerator& mMatrix(int k);

/// h_1 M_1 + h_2 M_2 + h_3 M_3
AffineGenerator blochHamiltonian(const Eigen::Vector3d& h);

/// Σ_{k=4}^{12} a_k M_k
AffineGenerator twoLevelDissipator(const TwoLevelParams& a);

enum class Channel { Depolarizing, PhaseFlip, BitFlip, BitPhaseFlip, AmplitudeDamping };
std::string_view toString(Channel c);
/// Throws InvalidArgument for unknown names.
Channel channelFromString(std::string_view name);

/// Named parameters: depolarizing {gamma}, phase_flip {a12}, bit_flip {a10},
/// bit_phase_flip {a11}, amplitude_damping {gamma}; every preset also
/// accepts h0_3 (free Hamiltonian along z, default 0).
struct ChannelPreset {
  Channel channel = Channel::Depolarizing;
  std::map<std::string, double> params;
};

/// Preset with default parameters (rates 1, h0_3 = 0).
ChannelPreset defaultPreset(Channel c);

/// Two-level control system with controls M_1..M_3, drift h0_3 M_3 + L̄_D,
/// and the generating GKS matrix. Throws InvalidArgument for unknown or
/// negative parameters.
ControlSystem preset(const ChannelPreset& spec);

/// GKS parameters (a_4..a_12) of a preset.
TwoLevelParams presetTwoLevelParams(const ChannelPreset& spec);

}  // namespace qmc
