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

#include "iongate/sequence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "iongate/liouville.hpp"

namespace iongate {

void Sequence::validate() const {
  for (const auto& p : pulses) p.validate();
  if (!gaps.empty() && gaps.size() + 1 != pulses.size()) {
    throw std::invalid_argument("sequence needs exactly one gap between consecutive pulses");
  }
  for (double g : gaps) {
    if (!(g >= 0.0)) throw std::invalid_argument("sequence gaps must be >= 0");
  }
}

Sequence& Sequence::append(const Sequence& other, double join_gap) {
  if (other.pulses.empty()) return *this;
  if (pulses.empty()) {
    *this = other;
    return *this;
  }
  const bool need_gaps = !gaps.empty() || !other.gaps.empty() || join_gap != 0.0;
  if (need_gaps) {
    if (gaps.empty()) gaps.assign(pulses.size() - 1, 0.0);
    gaps.push_back(join_gap);
    if (other.gaps.empty()) {
      gaps.insert(gaps.end(), other.pulses.size() - 1, 0.0);
    } else {
      gaps.insert(gaps.end(), other.gaps.begin(), other.gaps.end());
    }
  }
  pulses.insert(pulses.end(), other.pulses.begin(), other.pulses.end());
  return *this;
}

double pulse_duration(const PulseSpec& pulse, const TrapLaserParams& params) {
  pulse.validate();
  if (pulse.duration_override) return *pulse.duration_override;
  if (pulse.angle == 0.0) return 0.0;
  const double rabi = params.rabi(pulse.transition);
  const double eta = params.eta(pulse.transition);
  double coupling = 0.0;
  switch (pulse.sideband) {
    case Sideband::Carrier:
      coupling = rabi * carrier_element_truncated(eta, 0);
      break;
    case Sideband::Blue:
      coupling = rabi * sideband_element(eta, 0, +1);
      break;
    case Sideband::Red:
      // |g,1> <-> |up,0> is the lowest red-sideband pair.
      coupling = rabi * sideband_element(eta, 1, -1);
      break;
  }
  if (!(coupling > 0.0)) {
    throw std::invalid_argument("pulse has zero reference coupling on " +
                                std::string(transition_name(pulse.transition)));
  }
  return pulse.angle / coupling;
}

double sequence_duration(const Sequence& seq, const TrapLaserParams& params) {
  seq.validate();
  double total = 0.0;
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
    total += pulse_duration(seq.pulses[i], params);
    if (i + 1 < seq.pulses.size()) total += seq.gap_after(i);
  }
  return total;
}

Sequence prep_sequence(int target_n) {
  switch (target_n) {
    case 0:
      return Sequence{{PulseSpec::carrier(Transition::QuadrupoleGUp, M_PI)}, {}};
    case 1:
      return Sequence{{PulseSpec::blue(M_PI)}, {}};
    default:
      throw std::invalid_argument("motional preparation target must be 0 or 1, got " +
                                  std::to_string(target_n));
  }
}

Sequence cnot_core_sequence(double second_phase, double first_phase) {
  return Sequence{{PulseSpec::carrier(Transition::RamanUpDown, M_PI_2, first_phase),
                   PulseSpec::blue(2.0 * M_PI, 0.0),
                   PulseSpec::carrier(Transition::RamanUpDown, M_PI_2, second_phase)},
                  {}};
}

namespace {

Sequence bell_preparation() {
  return Sequence{{PulseSpec::carrier(Transition::QuadrupoleGUp, M_PI_2, 0.0),
                   PulseSpec::blue(M_PI, 0.0)},
                  {}};
}

BellPhases search_bell_phases() {
  constexpr int kGrid = 64;
  const HilbertSpace space(4);
  TrapLaserParams params;
  params.omega_z = 2.0 * M_PI * constants::kAxialTrapHz;
  params.eta_quad = lamb_dicke_from_trap(constants::kQuadrupoleWavelength, constants::kCa40Mass,
                                         params.omega_z, 1.0);
  params.rabi_quad = 2.0 * M_PI * 50e3;
  params.rabi_raman = 2.0 * M_PI * 50e3;

  auto propagate = [&](const PulseSpec& p) {
    return unitary_propagator(pulse_hamiltonian(space, p, params), pulse_duration(p, params));
  };
  auto raman_half = [&](int k) {
    return propagate(PulseSpec::carrier(Transition::RamanUpDown, M_PI_2, 2.0 * M_PI * k / kGrid));
  };

  const Vector prepared = sequence_unitary(space, bell_preparation(), params) *
                          PureState::basis(space, Level::g, 0).amplitudes();
  const Matrix sideband_2pi = propagate(PulseSpec::blue(2.0 * M_PI));
  const Vector target = bell_target(space).amplitudes();

  std::vector<Vector> after_first(kGrid);
  std::vector<Matrix> second(kGrid);
  for (int k = 0; k < kGrid; ++k) {
    after_first[k] = sideband_2pi * (raman_half(k) * prepared);
    second[k] = raman_half(k);
  }

  BellPhases best;
  best.ideal_fidelity = -1.0;
  for (int a = 0; a < kGrid; ++a) {
    for (int b = 0; b < kGrid; ++b) {
      const double f = std::norm(target.dot(second[b] * after_first[a]));
      if (f > best.ideal_fidelity + 1e-12) {
        best = {2.0 * M_PI * a / kGrid, 2.0 * M_PI * b / kGrid, f};
      }
    }
  }
  return best;
}

}  // namespace

const BellPhases& calibrated_bell_phases() {
  static const BellPhases phases = search_bell_phases();
  return phases;
}

Sequence calibrated_cnot_sequence() {
  const auto& phases = calibrated_bell_phases();
  return cnot_core_sequence(phases.second_raman_phase, phases.first_raman_phase);
}

Sequence bell_sequence() { return bell_preparation().append(calibrated_cnot_sequence()); }

}  // namespace iongate
