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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iongate/config.hpp"
#include "iongate/pulse.hpp"

namespace iongate {

struct ScanPoint {
  double x = 0.0;
  double p_g = 0.0;
  double p_up = 0.0;
  double p_down = 0.0;
};

struct ScanResult {
  std::string variable_name;
  std::vector<ScanPoint> points;
  std::string config_digest;

  /// Populations sum to one within 1e-9 and x is strictly increasing.
  void validate() const;
};

struct FringeFit {
  double amplitude = 0.0;
  double phase0 = 0.0;
  double mean = 0.0;
  double rms_residual = 0.0;

  double contrast() const { return 2.0 * amplitude; }
  double operator()(double x) const;
};

enum class BudgetChannel {
  raman_dephasing,
  quadrupole_dephasing,
  motional_distribution,
  spontaneous_decay,
};

std::string_view channel_name(BudgetChannel channel);

struct ErrorBudget {
  double baseline_fidelity = 0.0;
  std::vector<std::pair<BudgetChannel, double>> contributions;

  double operator[](BudgetChannel channel) const;
};

struct TruthTableRow {
  int input_n = 0;
  Level input_level = Level::up;
  int expected_n = 0;
  Level expected_level = Level::up;
  double expected_population = 0.0;  // P(expected_n, expected_level)
  double motion_preserved = 0.0;     // P(n == input_n), any internal level
};

struct CalibrationResult {
  ExperimentConfig config;  // rabi_*_hz and calibration.achieved_fidelity set
  double fidelity = 0.0;
  double sequence_duration = 0.0;
  int evaluated_points = 0;
};

std::vector<double> linspace(double start, double stop, int points);

/// Runs fn(i) for i in [0, count) on up to worker_count() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Hardware concurrency, capped by ION_GATE_SIM_THREADS when set.
unsigned worker_count();

ScanResult rabi_scan(Transition transition, Sideband sideband, std::span<const double> t_grid,
                     const ExperimentConfig& config);

ScanResult cz_fringe(int prep_n, std::span<const double> phase_grid,
                     const ExperimentConfig& config);

/// Least-squares p_up ~ mean + a cos x + b sin x. Needs at least 8 points;
/// throws FitSingularError when the grid cannot resolve the cosine.
FringeFit fit_fringe(const ScanResult& scan);

double bell_fidelity(const ExperimentConfig& config);

/// Density-matrix snapshots through the Bell sequence as (time, populations).
ScanResult bell_trace(const ExperimentConfig& config, int samples_per_pulse);

ErrorBudget error_budget(const ExperimentConfig& config);

std::vector<TruthTableRow> cnot_truth_table(const ExperimentConfig& config);

/// Replaces each point by the mean of a multinomial draw with `shots` trials.
/// Point i uses an engine seeded from (seed, i).
ScanResult sample_shots(const ScanResult& scan, int shots_per_point, std::uint64_t seed);

/// Grid search of rabi_quad_hz in [10, 100] kHz and rabi_raman_hz in
/// [10, 200] kHz for |bell_fidelity - target| minimal with the Bell sequence
/// shorter than 1 ms.
CalibrationResult calibrate(const ExperimentConfig& config, double target_fidelity = 0.74);
ExperimentConfig calibrate_defaults(const ExperimentConfig& config);

}  // namespace iongate
