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

#include "iongate/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "iongate/errors.hpp"

using namespace iongate;

TEST(Config, empty_text_gives_defaults) {
  const auto config = parse_config("");
  EXPECT_EQ(config, ExperimentConfig{});
  EXPECT_EQ(parse_config("# only a comment\n\n   \n"), ExperimentConfig{});
}

TEST(Config, defaults_match_experiment) {
  const ExperimentConfig config;
  const auto dec = config.decoherence_model();
  EXPECT_DOUBLE_EQ(dec.gamma_g_up, 2.0 * M_PI * 400.0);
  EXPECT_DOUBLE_EQ(dec.gamma_up_down, 2.0 * M_PI * 300.0);
  EXPECT_EQ(dec.heating_rate, 0.0);
  const auto params = config.trap_laser_params();
  EXPECT_DOUBLE_EQ(params.omega_z, 2.0 * M_PI * 0.72e6);
  EXPECT_NEAR(params.eta_quad, 0.114, 5e-4);
  EXPECT_EQ(params.eta_raman, 0.0);
  EXPECT_EQ(config.space().dim(), 15);
  EXPECT_FALSE(config.solver_config().dt_max.has_value());
}

TEST(Config, parses_values_and_comments) {
  const auto config = parse_config(
      "motional.nbar = 0.5   # warmer\n"
      "  lasers.eta_quad=0.05\n"
      "motional.n_max = 6\n"
      "solver.dt_max_s = 1e-8\n");
  EXPECT_EQ(config.motional.nbar, 0.5);
  EXPECT_EQ(config.lasers.eta_quad, 0.05);
  EXPECT_EQ(config.motional.n_max, 6);
  EXPECT_EQ(config.solver_config().dt_max, 1e-8);
  EXPECT_EQ(config.trap_laser_params().eta_quad, 0.05);
}

TEST(Config, validation_error_names_key) {
  try {
    parse_config("motional.nbar = -1\n");
    FAIL() << "expected ConfigValidationError";
  } catch (const ConfigValidationError& e) {
    EXPECT_EQ(e.key(), "motional.nbar");
  }
  try {
    parse_config("lasers.eta_quad = 1.5\n");
    FAIL() << "expected ConfigValidationError";
  } catch (const ConfigValidationError& e) {
    EXPECT_EQ(e.key(), "lasers.eta_quad");
  }
}

TEST(Config, parse_errors_carry_line_numbers) {
  auto line_of = [](std::string_view text) {
    try {
      parse_config(text);
    } catch (const ConfigParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("# header\nno equals sign\n"), 2);
  EXPECT_EQ(line_of("\n\nbogus.key = 1\n"), 3);
  EXPECT_EQ(line_of("motional.nbar = 0.1\nmotional.nbar = 0.2\n"), 2);
  EXPECT_EQ(line_of("motional.nbar = abc\n"), 1);
  EXPECT_EQ(line_of("motional.n_max = 2.5\n"), 1);
  EXPECT_EQ(line_of("motional.nbar =\n"), 1);
  EXPECT_EQ(line_of(" = 3\n"), 1);
}

TEST(Config, round_trip) {
  ExperimentConfig config;
  EXPECT_EQ(parse_config(serialize_config(config)), config);

  config.lasers.eta_quad = 0.0987654321;
  config.decoherence.gamma_g_up_hz = 1.0 / 3.0;
  config.motional.n_max = 7;
  config.solver.dt_max_s = 2.5e-9;
  config.calibration.achieved_fidelity.reset();
  const auto restored = parse_config(serialize_config(config));
  EXPECT_EQ(restored, config);
  EXPECT_FALSE(restored.calibration.achieved_fidelity.has_value());
  EXPECT_EQ(config_digest(restored), config_digest(config));
}

TEST(Config, file_round_trip) {
  const auto path = std::filesystem::temp_directory_path() / "iongate_config_test.cfg";
  ExperimentConfig config;
  config.motional.nbar = 0.125;
  save_config(config, path);
  EXPECT_EQ(load_config(path), config);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), std::runtime_error);
}

TEST(Config, digest_distinguishes_configs) {
  ExperimentConfig a;
  ExperimentConfig b;
  EXPECT_EQ(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 16u);
  b.motional.nbar = 0.0200000001;
  EXPECT_NE(config_digest(a), config_digest(b));
}

TEST(Config, format_double_round_trips) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.740225994385547}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}
