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

#include <span>
#include <string>
#include <vector>

#include "iongate/config.hpp"
#include "iongate/hilbert.hpp"

namespace iongate::oracles {

struct OracleReport {
  std::string name;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

OracleReport make_report(std::string name, double max_abs_error, double tolerance);

/// sin^2(omega t / 2).
std::vector<double> two_level_rabi_oracle(double omega, std::span<const double> t_grid);

/// Resonant two-level Rabi flopping from the lower state when the coherence
/// decays at rate gamma/2: P = (1 - e^{-gamma t/4}(cos w t + gamma/(4w) sin w t)) / 2,
/// w = sqrt(omega^2 - gamma^2/16).
std::vector<double> damped_rabi_oracle(double omega, double gamma, std::span<const double> t_grid);

/// sum_n P(n) sin^2(eta sqrt(n+1) omega t / 2) over the closed blue-sideband
/// pairs of the truncated space, n = 0..n_max-1.
std::vector<double> thermal_sideband_oracle(double eta, double omega, double nbar, int n_max,
                                            std::span<const double> t_grid);

/// V e^{-i diag(w) t} V^dag rho V e^{i diag(w) t} V^dag via the spectral theorem.
DensityMatrix spectral_unitary_evolve(const DensityMatrix& rho, const Operator& hamiltonian,
                                      double duration);

std::vector<OracleReport> run_all_oracles(const ExperimentConfig& config);

}  // namespace iongate::oracles
