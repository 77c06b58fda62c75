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

#include "iongate/hilbert.hpp"
#include "iongate/pulse.hpp"

namespace iongate {

namespace constants {
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kCa40Mass = 40.0 * kAtomicMassUnit;
inline constexpr double kQuadrupoleWavelength = 729e-9;  // m
inline constexpr double kAxialTrapHz = 0.72e6;
// Radial secular frequencies 1.91 MHz and 1.68 MHz are not simulated.
}  // namespace constants

/// Trap and drive parameters, all angular frequencies in rad/s.
struct TrapLaserParams {
  double omega_z = 0.0;
  double eta_quad = 0.0;
  double eta_raman = 0.0;
  double rabi_quad = 0.0;
  double rabi_raman = 0.0;

  void validate() const;
  double rabi(Transition t) const { return t == Transition::QuadrupoleGUp ? rabi_quad : rabi_raman; }
  double eta(Transition t) const { return t == Transition::QuadrupoleGUp ? eta_quad : eta_raman; }
};

/// eta = k * projection * sqrt(hbar / (2 m omega_z)).
double lamb_dicke_from_trap(double wavelength, double ion_mass, double omega_z,
                            double projection);

/// Exact carrier Debye-Waller factor exp(-eta^2/2) L_n(eta^2).
double carrier_element_exact(double eta, int n);

/// Second-order expansion 1 - eta^2 (n + 1/2).
double carrier_element_truncated(double eta, int n);

/// First-order sideband factor: eta sqrt(n+1) for order +1, eta sqrt(n) for -1.
double sideband_element(double eta, int n, int order);

/// Interaction-picture RWA Hamiltonian (hbar = 1) for a resonant pulse.
///
/// A pulse of phase phi on the pair (a, b) contributes
/// (Omega/2) c_n (e^{i phi} |b><a| + h.c.), which is the rotation
/// exp(-i theta/2 (cos phi sx + sin phi sy)) with sx = |b><a| + |a><b|,
/// sy = i(|b><a| - |a><b|). Pairs are (g, up) for the quadrupole line and
/// (up, down) for the Raman line.
Operator pulse_hamiltonian(const HilbertSpace& space, const PulseSpec& pulse,
                           const TrapLaserParams& params);

}  // namespace iongate
