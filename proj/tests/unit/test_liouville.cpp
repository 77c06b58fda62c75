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

#include "iongate/liouville.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "iongate/config.hpp"
#include "iongate/errors.hpp"
#include "iongate/oracles.hpp"
#include "test_support.hpp"

using namespace iongate;
using namespace iongate::testing;

namespace {

DensityMatrix coherent_pair(const HilbertSpace& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  const auto g0 = space.index(Level::g, 0);
  const auto up0 = space.index(Level::up, 0);
  m(g0, g0) = m(up0, up0) = 0.5;
  m(g0, up0) = m(up0, g0) = 0.5;
  return DensityMatrix(space, m);
}

DecoherenceModel random_decoherence(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.0, kTwoPi * 2e3);
  DecoherenceModel dec;
  dec.gamma_g_up = rate(rng);
  dec.gamma_up_down = rate(rng);
  dec.gamma_g_down = rate(rng);
  dec.d_state_decay_rate = std::uniform_real_distribution<double>(0.0, 500.0)(rng);
  return dec;
}

}  // namespace

TEST(SolverConfig, step_rule) {
  const SolverConfig def;
  EXPECT_EQ(def.steps_for(0.0), 0);
  EXPECT_EQ(def.steps_for(10e-6), 200);
  EXPECT_EQ(def.steps_for(175e-6), 1750);
  EXPECT_EQ(def.steps_for(175.01e-6), 1751);
  const SolverConfig explicit_dt{1e-6};
  EXPECT_EQ(explicit_dt.steps_for(10e-6), 10);
  EXPECT_EQ(explicit_dt.steps_for(0.5e-6), 1);
  EXPECT_THROW((SolverConfig{0.0}).validate(), std::invalid_argument);
}

TEST(EvolvePulse, zero_duration_is_bitwise_identity) {
  std::mt19937_64 rng(1);
  const HilbertSpace space(4);
  const auto rho = random_density(rng, space);
  const auto h = random_hermitian(rng, space.dim(), 1e5);
  const DecoherenceModel dec{1e3, 2e3, 3e3, 1.0, 0.0};
  EXPECT_EQ(evolve_pulse(rho, h, dec, 0.0).matrix(), rho.matrix());
}

TEST(EvolvePulse, coherence_decay_closed_form) {
  const HilbertSpace space(4);
  DecoherenceModel dec;
  dec.gamma_g_up = kTwoPi * 400.0;
  const Operator zero = Operator::Zero(space.dim(), space.dim());
  const auto out = evolve_pulse(coherent_pair(space), zero, dec, 1e-3);
  const Complex c = out.at(Level::g, 0, Level::up, 0);
  EXPECT_NEAR(c.real(), 0.5 * std::exp(-M_PI * 400.0 * 1e-3), 1e-8);
  EXPECT_NEAR(c.real(), 0.1423, 5e-5);
  EXPECT_NEAR(c.imag(), 0.0, 1e-15);
}

TEST(EvolvePulse, unitary_limit_conserves_purity) {
  const HilbertSpace space(4);
  const auto params = ideal_params();
  const auto h =
      pulse_hamiltonian(space, PulseSpec::carrier(Transition::QuadrupoleGUp, M_PI), params);
  auto rho = DensityMatrix::from_pure(PureState::basis(space, Level::g, 0));
  // Sample the trajectory in 20 segments.
  for (int k = 0; k < 20; ++k) {
    rho = evolve_pulse(rho, h, DecoherenceModel{}, 2e-6);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-8);
  }
}

TEST(EvolvePulse, invariants_under_random_generators) {
  std::mt19937_64 rng(2);
  const HilbertSpace space(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(rng, space);
    const auto h = random_hermitian(rng, space.dim(), kTwoPi * 30e3);
    const auto out = evolve_pulse(rho, h, random_decoherence(rng), 50e-6);
    const auto report = out.check();
    EXPECT_LE(report.trace_error, 1e-9);
    EXPECT_LE(report.hermiticity_error, 1e-12);
    EXPECT_GE(report.min_eigenvalue, -1e-9);
  }
}

TEST(EvolvePulse, dephasing_leaves_diagonal_constant) {
  std::mt19937_64 rng(3);
  const HilbertSpace space(4);
  const auto rho = random_density(rng, space);
  DecoherenceModel dec{kTwoPi * 400, kTwoPi * 300, kTwoPi * 500, 0.0, 0.0};
  const auto out =
      evolve_pulse(rho, Operator::Zero(space.dim(), space.dim()), dec, 500e-6);
  EXPECT_LE(max_abs(out.matrix().diagonal() - rho.matrix().diagonal()), 1e-10);
  EXPECT_LT(std::abs(out(0, space.index(Level::up, 2))), std::abs(rho(0, space.index(Level::up, 2))));
  // Coherences within one internal level are untouched.
  EXPECT_LE(std::abs(out(0, 1) - rho(0, 1)), 1e-10);
}

TEST(EvolvePulse, decay_moves_population_to_ground) {
  const HilbertSpace space(2);
  auto rho = DensityMatrix::from_pure(PureState::basis(space, Level::down, 1));
  DecoherenceModel dec;
  dec.d_state_decay_rate = 1e3;
  const auto out = evolve_pulse(rho, Operator::Zero(space.dim(), space.dim()), dec, 1e-3);
  EXPECT_NEAR(out.at(Level::down, 1, Level::down, 1).real(), std::exp(-1.0), 1e-9);
  EXPECT_NEAR(out.at(Level::g, 1, Level::g, 1).real(), 1.0 - std::exp(-1.0), 1e-9);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
}

TEST(EvolvePulse, step_halving_converges_at_defaults) {
  const ExperimentConfig config;
  const auto params = config.trap_laser_params();
  const auto dec = config.decoherence_model();
  const HilbertSpace space = config.space();
  auto rho = thermal_density(space, config.motional.nbar, Level::g);
  for (const auto& pulse : bell_sequence().pulses) {
    const auto h = pulse_hamiltonian(space, pulse, params);
    const double t = pulse_duration(pulse, params);
    const SolverConfig def;
    const SolverConfig half{t / (2.0 * static_cast<double>(def.steps_for(t)))};
    const auto coarse = evolve_pulse(rho, h, dec, t, def);
    const auto fine = evolve_pulse(rho, h, dec, t, half);
    EXPECT_LE(max_abs(coarse.matrix() - fine.matrix()), 1e-6);
    rho = coarse;
  }
}

TEST(EvolvePulse, matches_reference_on_random_instances) {
  std::mt19937_64 rng(20260101);
  const HilbertSpace space(2);
  std::uniform_real_distribution<double> fraction(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density(rng, space);
    const auto h = random_hermitian(rng, space.dim(), kTwoPi * 40e3);
    const auto dec = random_decoherence(rng);
    // Largest rotation up to 4pi, the range spanned by the experiment pulses.
    const double norm = Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues().cwiseAbs().maxCoeff();
    const double t = fraction(rng) * 4.0 * M_PI / norm;
    const auto rk4 = evolve_pulse(rho, h, dec, t, SolverConfig{t / 1000.0});
    const auto ref = reference_evolve(rho, h, dec, t);
    EXPECT_LE(max_abs(rk4.matrix() - ref.matrix()), 1e-6) << "instance " << trial;
    EXPECT_NEAR(ref.trace().real(), 1.0, 1e-10);
  }
}

TEST(ReferenceEvolve, identity_generator) {
  std::mt19937_64 rng(4);
  const HilbertSpace space(2);
  const auto rho = random_density(rng, space);
  const auto out =
      reference_evolve(rho, Operator::Zero(space.dim(), space.dim()), DecoherenceModel{}, 1e-3);
  EXPECT_LE(max_abs(out.matrix() - rho.matrix()), 1e-12);
}

TEST(ReferenceEvolve, matches_spectral_oracle) {
  std::mt19937_64 rng(5);
  const HilbertSpace space(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = random_density(rng, space);
    const auto h = random_hermitian(rng, space.dim(), kTwoPi * 20e3);
    const auto ref = reference_evolve(rho, h, DecoherenceModel{}, 80e-6);
    const auto spectral = oracles::spectral_unitary_evolve(rho, h, 80e-6);
    EXPECT_LE(max_abs(ref.matrix() - spectral.matrix()), 1e-8);
  }
}

TEST(UnitaryPropagator, is_unitary) {
  std::mt19937_64 rng(6);
  const auto h = random_hermitian(rng, 9, kTwoPi * 20e3);
  const Matrix u = unitary_propagator(h, 100e-6);
  EXPECT_LE(max_abs(u * u.adjoint() - Matrix::Identity(9, 9)), 1e-12);
}

TEST(EvolvePulse, errors) {
  const HilbertSpace space(1);
  const auto rho = DensityMatrix::maximally_mixed(space);
  Operator h = Operator::Zero(space.dim(), space.dim());
  EXPECT_THROW(evolve_pulse(rho, h, DecoherenceModel{}, -1e-6), std::invalid_argument);
  h(0, 1) = 1.0;
  EXPECT_THROW(evolve_pulse(rho, h, DecoherenceModel{}, 1e-6), std::invalid_argument);
  EXPECT_THROW(reference_evolve(rho, h, DecoherenceModel{}, 1e-6), std::invalid_argument);
  DecoherenceModel heating;
  heating.heating_rate = 5.0;
  EXPECT_THROW(evolve_pulse(rho, Operator::Zero(6, 6), heating, 1e-6), UnsupportedError);
  DecoherenceModel negative;
  negative.gamma_g_up = -1.0;
  EXPECT_THROW(evolve_pulse(rho, Operator::Zero(6, 6), negative, 1e-6), std::invalid_argument);
  EXPECT_THROW(evolve_pulse(rho, Operator::Zero(3, 3), DecoherenceModel{}, 1e-6),
               std::invalid_argument);
}

TEST(DecoherenceModel, dephasing_lookup) {
  const DecoherenceModel dec{1.0, 2.0, 3.0, 0.0, 0.0};
  EXPECT_EQ(dec.dephasing(Level::g, Level::up), 1.0);
  EXPECT_EQ(dec.dephasing(Level::up, Level::g), 1.0);
  EXPECT_EQ(dec.dephasing(Level::down, Level::up), 2.0);
  EXPECT_EQ(dec.dephasing(Level::g, Level::down), 3.0);
  EXPECT_EQ(dec.dephasing(Level::up, Level::up), 0.0);
}
