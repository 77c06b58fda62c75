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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "iongate/couplings.hpp"
#include "iongate/hilbert.hpp"
#include "iongate/liouville.hpp"

namespace iongate {

/// Experiment parameters. Frequencies are in Hz (cycles), converted to rad/s
/// by the accessors. Defaults reproduce the measured trap and the calibrated
/// Rabi frequencies, so an empty config file is the reference setup.
struct ExperimentConfig {
  struct Trap {
    double omega_z_hz = constants::kAxialTrapHz;
    bool operator==(const Trap&) const = default;
  } trap;

  struct Lasers {
    std::optional<double> eta_quad;  // unset: 729 nm along the axis, 40Ca+
    double eta_raman = 0.0;
    double rabi_quad_hz = 25e3;   // calibrated, see calibrate()
    double rabi_raman_hz = 48e3;  // calibrated, see calibrate()
    bool operator==(const Lasers&) const = default;
  } lasers;

  struct Decoherence {
    double gamma_g_up_hz = 400.0;
    double gamma_up_down_hz = 300.0;
    double gamma_g_down_hz = 500.0;
    double d_state_decay_per_s = 1.0 / 1.1;
    double heating_quanta_per_s = 0.0;  // measured ~0.005 quanta/ms, neglected
    bool operator==(const Decoherence&) const = default;
  } decoherence;

  struct Motional {
    double nbar = 0.02;
    int n_max = 4;
    bool operator==(const Motional&) const = default;
  } motional;

  struct Solver {
    std::optional<double> dt_max_s;
    bool operator==(const Solver&) const = default;
  } solver;

  struct Calibration {
    std::optional<double> achieved_fidelity = 0.740225994385547;
    bool operator==(const Calibration&) const = default;
  } calibration;

  struct Metadata {
    double qubit_splitting_thz = 1.82;
    bool operator==(const Metadata&) const = default;
  } metadata;

  /// Throws ConfigValidationError naming the offending key.
  void validate() const;

  HilbertSpace space() const { return HilbertSpace(motional.n_max); }
  TrapLaserParams trap_laser_params() const;
  DecoherenceModel decoherence_model() const;
  SolverConfig solver_config() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses flat `section.key = value` text with `#` comments. Absent keys keep
/// their defaults. Throws ConfigParseError or ConfigValidationError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Lossless text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

/// 64-bit FNV-1a of the serialized config, as 16 hex digits.
std::string config_digest(const ExperimentConfig& config);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace iongate
