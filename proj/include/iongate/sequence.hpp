// Copyright 2026 The ion-gate-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "iongate/couplings.hpp"
#include "iongate/pulse.hpp"

namespace iongate {

/// Ordered pulses with free-evolution gaps between consecutive pulses.
struct Sequence {
  std::vector<PulseSpec> pulses;
  std::vector<double> gaps;  // size pulses.size() - 1, or empty for all-zero

  void validate() const;
  double gap_after(std::size_t i) const { return gaps.empty() ? 0.0 : gaps.at(i); }

  /// Appends `other`, joined by a gap of `join_gap` seconds.
  Sequence& append(const Sequence& other, double join_gap = 0.0);
};

/// Time for the pulse area on its reference pair; duration_override wins.
double pulse_duration(const PulseSpec& pulse, const TrapLaserParams& params);
double sequence_duration(const Sequence& seq, const TrapLaserParams& params);

/// Carrier pi (target 0) or blue-sideband pi (target 1) on g-up.
Sequence prep_sequence(int target_n);

/// Raman pi/2 at `first_phase`, blue-sideband 2pi on g-up, Raman pi/2 at
/// `second_phase`.
Sequence cnot_core_sequence(double second_phase, double first_phase = 0.0);

/// Raman phases that turn the CNOT core into the gate mapping
/// (|0> + |1>)|up> onto bell_target() with no residual relative phase.
struct BellPhases {
  double first_raman_phase = 0.0;
  double second_raman_phase = 0.0;
  double ideal_fidelity = 0.0;
};

/// Found once by a 64 x 64 grid search over both Raman phases in the unitary,
/// zero-temperature limit. Cached after the first call.
const BellPhases& calibrated_bell_phases();

/// The CNOT core at the calibrated phases.
Sequence calibrated_cnot_sequence();

/// Carrier pi/2 and blue-sideband pi on g-up, then the calibrated CNOT core.
Sequence bell_sequence();

}  // namespace iongate
