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

#include "iongate/couplings.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "iongate/errors.hpp"

namespace iongate {

std::string_view transition_name(Transition t) {
  return t == Transition::QuadrupoleGUp ? "quadrupole_g_up" : "raman_up_down";
}

std::string_view sideband_name(Sideband s) {
  switch (s) {
    case Sideband::Red:
      return "red";
    case Sideband::Carrier:
      return "carrier";
    case Sideband::Blue:
      return "blue";
  }
  return "?";
}

void PulseSpec::validate() const {
  if (!(angle >= 0.0)) throw std::invalid_argument("pulse angle must be >= 0");
  if (!std::isfinite(phase)) throw std::invalid_argument("pulse phase must be finite");
  const int order = static_cast<int>(sideband);
  if (order < -1 || order > 1) throw std::invalid_argument("sideband order must be -1, 0 or +1");
  if (order != 0 && transition != Transition::QuadrupoleGUp) {
    throw UnsupportedError("sidebands are only modeled on the quadrupole transition");
  }
  if (duration_override && !(*duration_override >= 0.0)) {
    throw std::invalid_argument("pulse duration override must be >= 0");
  }
}

void TrapLaserParams::validate() const {
  for (double v : {omega_z, eta_quad, eta_raman, rabi_quad, rabi_raman}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("trap/laser parameters must be finite and nonnegative");
    }
  }
  if (eta_quad >= 1.0) throw std::invalid_argument("eta_quad must be < 1");
}

double lamb_dicke_from_trap(double wavelength, double ion_mass, double omega_z,
                            double projection) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (!(ion_mass > 0.0)) throw std::invalid_argument("ion mass must be positive");
  if (!(omega_z > 0.0)) throw std::invalid_argument("trap frequency must be positive");
  if (!(projection >= 0.0)) throw std::invalid_argument("projection must be >= 0");
  const double k = 2.0 * M_PI / wavelength;
  const double x0 = std::sqrt(constants::kHbar / (2.0 * ion_mass * omega_z));
  return k * projection * x0;
}

namespace {

void require_fock(int n) {
  if (n < 0) throw std::invalid_argument("Fock number must be >= 0, got " + std::to_string(n));
}

}  // namespace

double carrier_element_exact(double eta, int n) {
  require_fock(n);
  const double x = eta * eta;
  // L_n(x) = sum_k C(n,k) (-x)^k / k!
  double term = 1.0;
  double laguerre = 1.0;
  for (int k = 1; k <= n; ++k) {
    term *= -x * static_cast<double>(n - k + 1) / (static_cast<double>(k) * k);
    laguerre += term;
  }
  return std::exp(-0.5 * x) * laguerre;
}

double carrier_element_truncated(double eta, int n) {
  require_fock(n);
  return 1.0 - eta * eta * (n + 0.5);
}

double sideband_element(double eta, int n, int order) {
  require_fock(n);
  if (order == 1) return eta * std::sqrt(static_cast<double>(n) + 1.0);
  if (order == -1) return eta * std::sqrt(static_cast<double>(n));
  throw std::invalid_argument("sideband order must be +1 or -1, got " + std::to_string(order));
}

Operator pulse_hamiltonian(const HilbertSpace& space, const PulseSpec& pulse,
                           const TrapLaserParams& params) {
  pulse.validate();
  params.validate();
  Operator h = Operator::Zero(space.dim(), space.dim());
  const Complex phasor = std::polar(1.0, pulse.phase);
  const double half_rabi = 0.5 * params.rabi(pulse.transition);
  const double eta = params.eta(pulse.transition);

  auto couple = [&](Eigen::Index upper, Eigen::Index lower, double strength) {
    h(upper, lower) += half_rabi * strength * phasor;
    h(lower, upper) += half_rabi * strength * std::conj(phasor);
  };

  const int order = static_cast<int>(pulse.sideband);
  const int n_max = space.n_max();
  if (pulse.transition == Transition::RamanUpDown) {
    for (int n = 0; n <= n_max; ++n) {
      couple(space.index(Level::down, n), space.index(Level::up, n),
             carrier_element_truncated(eta, n));
    }
    return h;
  }
  for (int n = 0; n <= n_max; ++n) {
    const int m = n + order;  // motional number on |up>
    if (m < 0 || m > n_max) continue;
    const double strength =
        order == 0 ? carrier_element_truncated(eta, n) : sideband_element(eta, n, order);
    couple(space.index(Level::up, m), space.index(Level::g, n), strength);
  }
  return h;
}

}  // namespace iongate
