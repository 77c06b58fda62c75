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

#include <optional>
#include <string_view>

namespace iongate {

enum class Transition {
  QuadrupoleGUp,  // 729 nm, |g> <-> |up>
  RamanUpDown,    // stimulated Raman, |up> <-> |down>
};

enum class Sideband : int { Red = -1, Carrier = 0, Blue = 1 };

std::string_view transition_name(Transition t);
std::string_view sideband_name(Sideband s);

/// One rectangular, resonant pulse. `angle` is the rotation area on the
/// reference pair (n = 0 for carriers, |g,0> <-> |up,1> for the blue sideband).
struct PulseSpec {
  Transition transition = Transition::QuadrupoleGUp;
  Sideband sideband = Sideband::Carrier;
  double angle = 0.0;
  double phase = 0.0;
  std::optional<double> duration_override;

  /// Throws std::invalid_argument (UnsupportedError for sidebands on Raman).
  void validate() const;

  static PulseSpec carrier(Transition t, double angle, double phase = 0.0) {
    return {t, Sideband::Carrier, angle, phase, std::nullopt};
  }
  static PulseSpec blue(double angle, double phase = 0.0) {
    return {Transition::QuadrupoleGUp, Sideband::Blue, angle, phase, std::nullopt};
  }
  static PulseSpec red(double angle, double phase = 0.0) {
    return {Transition::QuadrupoleGUp, Sideband::Red, angle, phase, std::nullopt};
  }
};

}  // namespace iongate
