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

#include "iongate/couplings.hpp"
#include "iongate/hilbert.hpp"
#include "iongate/sequence.hpp"

namespace iongate {

/// Dephasing and decay rates. Dephasing multiplies every off-diagonal element
/// whose internal labels are the pair (a, b) by exp(-gamma_ab t / 2).
struct DecoherenceModel {
  double gamma_g_up = 0.0;          // rad/s
  double gamma_up_down = 0.0;       // rad/s
  double gamma_g_down = 0.0;        // rad/s
  double d_state_decay_rate = 0.0;  // 1/s, |up>,|down> -> |g>, motion preserved
  double heating_rate = 0.0;        // quanta/s, must be 0 (not modeled)

  void validate() const;
  double dephasing(Level a, Level b) const;
};

enum class SolverMethod { FixedStepRK4, ReferenceSuperoperatorExponential };

struct SolverConfig {
  static constexpr double kDefaultStepCeiling = 100e-9;
  static constexpr int kDefaultMinSteps = 200;

  /// Unset: step = min(duration / 200, 100 ns). Set: step <= dt_max exactly.
  std::optional<double> dt_max;
  SolverMethod method = SolverMethod::FixedStepRK4;

  void validate() const;
  long steps_for(double duration) const;
};

DensityMatrix evolve_pulse(const DensityMatrix& rho, const Operator& hamiltonian,
                           const DecoherenceModel& dec, double duration,
                           const SolverConfig& cfg = {});

/// Dense dim^2 x dim^2 superoperator exponential for the same generator.
DensityMatrix reference_evolve(const DensityMatrix& rho, const Operator& hamiltonian,
                               const DecoherenceModel& dec, double duration);

/// Superoperator of the generator in column-major vec convention.
Matrix liouvillian_superoperator(const HilbertSpace& space, const Operator& hamiltonian,
                                 const DecoherenceModel& dec);

/// exp(-i H t) for the unitary limit.
Matrix unitary_propagator(const Operator& hamiltonian, double duration);

DensityMatrix evolve_sequence(const DensityMatrix& rho0, const Sequence& seq,
                              const DecoherenceModel& dec, const TrapLaserParams& params,
                              const SolverConfig& cfg = {});

/// Product of pulse propagators for a sequence (gaps are identity when unitary).
Matrix sequence_unitary(const HilbertSpace& space, const Sequence& seq,
                        const TrapLaserParams& params);

}  // namespace iongate
