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

#include <gtest/gtest.h>

#include "iongate/errors.hpp"
#include "iongate/liouville.hpp"
#include "test_support.hpp"

using namespace iongate;
using iongate::testing::ideal_params;

namespace {

DensityMatrix ground(const HilbertSpace& space) {
  return DensityMatrix::from_pure(PureState::basis(space, Level::g, 0));
}

DensityMatrix run_ideal(const Sequence& seq, const DensityMatrix& rho,
                        const TrapLaserParams& params) {
  return evolve_sequence(rho, seq, DecoherenceModel{}, params);
}

}  // namespace

TEST(PulseDuration, examples) {
  EXPECT_NEAR(pulse_duration(PulseSpec::carrier(Transition::QuadrupoleGUp, M_PI),
                             ideal_params(0.0)),
              10e-6, 1e-15);
  EXPECT_NEAR(pulse_duration(PulseSpec::blue(2.0 * M_PI), ideal_params(0.114)),
              1.0 / (50e3 * 0.114), 1e-15);
  EXPECT_NEAR(pulse_duration(PulseSpec::blue(2.0 * M_PI), ideal_params(0.114)), 175.4e-6, 0.05e-6);
  EXPECT_EQ(pulse_duration(PulseSpec::blue(0.0), ideal_params()), 0.0);
}

TEST(PulseDuration, carrier_uses_ground_state_element) {
  const auto params = ideal_params(0.114);
  EXPECT_DOUBLE_EQ(pulse_duration(PulseSpec::carrier(Transition::QuadrupoleGUp, M_PI), params),
                   M_PI / (params.rabi_quad * carrier_element_truncated(0.114, 0)));
  EXPECT_DOUBLE_EQ(pulse_duration(PulseSpec::red(M_PI), params),
                   pulse_duration(PulseSpec::blue(M_PI), params));
}

TEST(PulseDuration, override_and_errors) {
  auto pulse = PulseSpec::blue(M_PI);
  pulse.duration_override = 3e-6;
  EXPECT_EQ(pulse_duration(pulse, ideal_params()), 3e-6);
  EXPECT_THROW(pulse_duration(PulseSpec::blue(M_PI), ideal_params(0.0)), std::invalid_argument);
  auto no_raman = ideal_params();
  no_raman.rabi_raman = 0.0;
  EXPECT_THROW(pulse_duration(PulseSpec::carrier(Transition::RamanUpDown, M_PI), no_raman),
               std::invalid_argument);
}

TEST(PulseDuration, independent_of_phase) {
  const auto params = ideal_params();
  const double ref = pulse_duration(PulseSpec::blue(M_PI, 0.0), params);
  for (double phi : {0.3, 1.0, M_PI, 5.0, 4.0 * M_PI}) {
    EXPECT_EQ(pulse_duration(PulseSpec::blue(M_PI, phi), params), ref);
  }
}

TEST(PulseSpec, validation) {
  EXPECT_THROW((PulseSpec{Transition::QuadrupoleGUp, Sideband::Carrier, -1.0, 0.0, std::nullopt})
                   .validate(),
               std::invalid_argument);
  EXPECT_THROW((PulseSpec{Transition::RamanUpDown, Sideband::Red, 1.0, 0.0, std::nullopt})
                   .validate(),
               UnsupportedError);
  EXPECT_THROW((PulseSpec{Transition::QuadrupoleGUp, Sideband::Blue, 1.0, 0.0, -1e-6}).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW(PulseSpec::red(M_PI, 2.0).validate());
}

TEST(Sequence, gap_validation) {
  Sequence seq = prep_sequence(0);
  seq.append(prep_sequence(1), 1e-6);
  EXPECT_NO_THROW(seq.validate());
  EXPECT_EQ(seq.gap_after(0), 1e-6);
  seq.gaps[0] = -1.0;
  EXPECT_THROW(seq.validate(), std::invalid_argument);
  Sequence bad{{PulseSpec::blue(1.0), PulseSpec::blue(1.0)}, {0.0, 0.0}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(PrepSequence, ideal_targets) {
  const HilbertSpace space(4);
  const auto params = ideal_params();
  const auto r0 = run_ideal(prep_sequence(0), ground(space), params);
  EXPECT_GE(r0.at(Level::up, 0, Level::up, 0).real(), 1.0 - 1e-6);
  const auto r1 = run_ideal(prep_sequence(1), ground(space), params);
  EXPECT_GE(r1.at(Level::up, 1, Level::up, 1).real(), 1.0 - 1e-6);
  EXPECT_THROW(prep_sequence(2), std::invalid_argument);
  EXPECT_THROW(prep_sequence(-1), std::invalid_argument);
}

TEST(EvolveSequence, examples) {
  const HilbertSpace space(4);
  const auto params = ideal_params();
  const auto rho = ground(space);
  EXPECT_EQ(run_ideal(Sequence{}, rho, params).matrix(), rho.matrix());

  const auto pi = run_ideal(Sequence{{PulseSpec::carrier(Transition::QuadrupoleGUp, M_PI)}, {}},
                            rho, params);
  EXPECT_NEAR(populations(pi).up, 1.0, 1e-8);

  const auto bsb = run_ideal(Sequence{{PulseSpec::blue(M_PI)}, {}}, rho, params);
  EXPECT_GE(fidelity(bsb, PureState::basis(space, Level::up, 1)), 1.0 - 1e-6);
}

TEST(CnotCore, structure) {
  const auto seq = cnot_core_sequence(1.25, 0.5);
  ASSERT_EQ(seq.pulses.size(), 3u);
  EXPECT_EQ(seq.pulses[0].transition, Transition::RamanUpDown);
  EXPECT_DOUBLE_EQ(seq.pulses[0].angle, M_PI / 2);
  EXPECT_EQ(seq.pulses[0].phase, 0.5);
  EXPECT_EQ(seq.pulses[1].sideband, Sideband::Blue);
  EXPECT_DOUBLE_EQ(seq.pulses[1].angle, 2.0 * M_PI);
  EXPECT_EQ(seq.pulses[1].phase, 0.0);
  EXPECT_EQ(seq.pulses[2].transition, Transition::RamanUpDown);
  EXPECT_EQ(seq.pulses[2].phase, 1.25);
  EXPECT_EQ(cnot_core_sequence(2.0).pulses[0].phase, 0.0);
}

TEST(CnotCore, bsb_two_pi_conditional_phase) {
  const HilbertSpace space(4);
  const Matrix u = sequence_unitary(space, Sequence{{PulseSpec::blue(2.0 * M_PI)}, {}},
                                    ideal_params());
  const auto up1 = space.index(Level::up, 1);
  const auto up0 = space.index(Level::up, 0);
  EXPECT_LE(std::abs(u(up1, up1) - Complex(-1.0)), 1e-6);
  EXPECT_LE(std::abs(u(up0, up0) - Complex(1.0)), 1e-9);
  EXPECT_LE(u.col(up0).norm() - 1.0, 1e-12);
  EXPECT_LE((u.col(up0) - Vector::Unit(space.dim(), up0)).norm(), 1e-9);
}

TEST(CnotCore, fringe_reversal_at_extreme) {
  // The phase that maximises P(up) for |up,1> minimises it for |up,0>.
  const HilbertSpace space(4);
  const auto params = ideal_params();
  const auto from1 = DensityMatrix::from_pure(PureState::basis(space, Level::up, 1));
  const auto from0 = DensityMatrix::from_pure(PureState::basis(space, Level::up, 0));
  double best_phi = 0.0;
  double best = -1.0;
  for (int k = 0; k < 64; ++k) {
    const double phi = 2.0 * M_PI * k / 64.0;
    const double p = populations(run_ideal(cnot_core_sequence(phi), from1, params)).up;
    if (p > best) {
      best = p;
      best_phi = phi;
    }
  }
  EXPECT_GE(best, 0.999);
  EXPECT_LE(populations(run_ideal(cnot_core_sequence(best_phi), from0, params)).up, 1e-3);
}

TEST(BellSequence, preparation_reaches_motional_superposition) {
  const HilbertSpace space(4);
  const auto params = ideal_params();
  const auto seq = bell_sequence();
  ASSERT_EQ(seq.pulses.size(), 5u);
  const Sequence prep{{seq.pulses[0], seq.pulses[1]}, {}};
  const auto rho = run_ideal(prep, ground(space), params);
  Vector target = Vector::Zero(space.dim());
  target(space.index(Level::up, 0)) = M_SQRT1_2;
  target(space.index(Level::up, 1)) = M_SQRT1_2;
  EXPECT_GE(fidelity(rho, PureState(space, target)), 1.0 - 1e-4);
}

TEST(BellSequence, ideal_fidelity) {
  const HilbertSpace space(4);
  const auto& phases = calibrated_bell_phases();
  EXPECT_GE(phases.ideal_fidelity, 0.999);
  const auto rho = run_ideal(bell_sequence(), ground(space), ideal_params());
  EXPECT_GE(fidelity(rho, bell_target(space)), 0.999);
  // Cached: repeated calls return the same search result.
  EXPECT_EQ(&calibrated_bell_phases(), &phases);
}

TEST(BellSequence, shorter_than_one_millisecond_at_defaults) {
  const ExperimentConfig config;
  EXPECT_LT(sequence_duration(bell_sequence(), config.trap_laser_params()), 1e-3);
}
