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

#include "iongate/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>

#include "iongate/config.hpp"
#include "iongate/errors.hpp"
#include "iongate/experiments.hpp"
#include "iongate/oracles.hpp"
#include "iongate/report.hpp"
#include "iongate/sequence.hpp"

namespace iongate::cli {

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string plot_path;
};

void add_common(CLI::App* sub, CommonOptions& opts, bool with_plot) {
  sub->add_option("--config", opts.config_path, "Experiment configuration file");
  sub->add_option("--out", opts.out_path, "CSV output path");
  if (with_plot) sub->add_option("--plot", opts.plot_path, "SVG line plot output path");
}

ExperimentConfig read_config(const CommonOptions& opts) {
  if (opts.config_path.empty()) return ExperimentConfig{};
  return load_config(opts.config_path);
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  writer(out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

void emit_scan(const CommonOptions& opts, const ScanResult& scan, const std::string& title) {
  write_file(opts.out_path, [&](std::ostream& os) { report::write_scan_csv(os, scan); });
  write_file(opts.plot_path, [&](std::ostream& os) { report::write_scan_svg(os, scan, title); });
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density-matrix simulator for a trapped-ion motional/terahertz-qubit gate",
               "ion_gate_sim"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::function<int()> action;

  auto* rabi = app.add_subcommand("rabi", "Rabi oscillation scan on one transition");
  std::string transition;
  double tmax = 0.0;
  int points = 50;
  rabi->add_option("--transition", transition, "carrier | bsb | raman")
      ->required()
      ->check(CLI::IsMember({"carrier", "bsb", "raman"}));
  rabi->add_option("--tmax", tmax, "Scan end time in seconds")->required()->check(CLI::PositiveNumber);
  rabi->add_option("--points", points, "Number of time points")->check(CLI::Range(2, 1000000));
  add_common(rabi, opts, true);
  rabi->callback([&] {
    action = [&] {
      const auto config = read_config(opts);
      const Transition t = transition == "raman" ? Transition::RamanUpDown : Transition::QuadrupoleGUp;
      const Sideband s = transition == "bsb" ? Sideband::Blue : Sideband::Carrier;
      const auto grid = linspace(0.0, tmax, points);
      const auto scan = rabi_scan(t, s, grid, config);
      const auto& last = scan.points.back();
      out << "rabi " << transition << ": " << scan.points.size() << " points, P(up) at t="
          << format_double(last.x) << " s is " << fixed(last.p_up, 6) << "\n";
      emit_scan(opts, scan, "Rabi scan (" + transition + ")");
      return kExitOk;
    };
  });

  auto* fringe = app.add_subcommand("cz-fringe", "Ramsey fringe after the conditional-phase gate");
  int prep = 0;
  int fringe_points = 64;
  fringe->add_option("--prep", prep, "Motional preparation 0 or 1")
      ->required()
      ->check(CLI::IsMember({0, 1}));
  fringe->add_option("--points", fringe_points, "Phase points over [0, 4pi]")
      ->check(CLI::Range(2, 1000000));
  add_common(fringe, opts, true);
  fringe->callback([&] {
    action = [&] {
      const auto config = read_config(opts);
      const auto grid = linspace(0.0, 4.0 * M_PI, fringe_points);
      const auto scan = cz_fringe(prep, grid, config);
      out << "cz-fringe prep " << prep << ": " << scan.points.size() << " points\n";
      if (scan.points.size() >= 8) {
        const auto fit = fit_fringe(scan);
        out << "contrast = " << fixed(fit.contrast(), 4) << ", mean = " << fixed(fit.mean, 4)
            << ", phase0 = " << fixed(fit.phase0, 4) << " rad, rms residual = "
            << format_double(fit.rms_residual) << "\n";
      }
      emit_scan(opts, scan, "CZ fringe, prep |" + std::to_string(prep) + ">");
      return kExitOk;
    };
  });

  auto* bell = app.add_subcommand("bell", "Bell-state generation fidelity");
  int samples = 10;
  bell->add_option("--samples", samples, "Trace samples per pulse in the CSV")
      ->check(CLI::Range(1, 100000));
  add_common(bell, opts, true);
  bell->callback([&] {
    action = [&] {
      const auto config = read_config(opts);
      const double f = bell_fidelity(config);
      out << "F = " << fixed(f, 2) << "\n";
      out << "fidelity " << fixed(f, 6) << (f > 0.5 ? " exceeds" : " does not exceed")
          << " the product-state bound 0.5\n";
      out << "sequence duration " << fixed(sequence_duration(bell_sequence(), config.trap_laser_params()) * 1e6, 1)
          << " us\n";
      if (!opts.out_path.empty() || !opts.plot_path.empty()) {
        emit_scan(opts, bell_trace(config, samples), "Bell-state generation");
      }
      return kExitOk;
    };
  });

  auto* budget = app.add_subcommand("budget", "Per-channel Bell fidelity loss");
  add_common(budget, opts, false);
  budget->callback([&] {
    action = [&] {
      const auto config = read_config(opts);
      const auto b = error_budget(config);
      out << "baseline F = " << fixed(b.baseline_fidelity, 6) << "\n";
      for (const auto& [channel, value] : b.contributions) {
        out << channel_name(channel) << " = " << fixed(value, 6) << "\n";
      }
      write_file(opts.out_path,
                 [&](std::ostream& os) { report::write_budget_csv(os, b, config_digest(config)); });
      return kExitOk;
    };
  });

  auto* truth = app.add_subcommand("truth-table", "CNOT truth table on motional control");
  add_common(truth, opts, false);
  truth->callback([&] {
    action = [&] {
      const auto config = read_config(opts);
      const auto rows = cnot_truth_table(config);
      for (const auto& r : rows) {
        out << "|" << r.input_n << "," << level_name(r.input_level) << "> -> |" << r.expected_n
            << "," << level_name(r.expected_level) << ">  P = " << fixed(r.expected_population, 6)
            << "  motion kept = " << fixed(r.motion_preserved, 6) << "\n";
      }
      write_file(opts.out_path, [&](std::ostream& os) {
        report::write_truth_table_csv(os, rows, config_digest(config));
      });
      return kExitOk;
    };
  });

  auto* calib = app.add_subcommand("calibrate", "Fit Rabi frequencies to the target Bell fidelity");
  std::string write_config_path;
  double target = 0.74;
  calib->add_option("--target", target, "Target Bell fidelity")->check(CLI::Range(0.0, 1.0));
  calib->add_option("--write-config", write_config_path, "Write the calibrated configuration here");
  add_common(calib, opts, false);
  calib->callback([&] {
    action = [&] {
      const auto config = read_config(opts);
      const auto result = calibrate(config, target);
      out << "rabi_quad_hz = " << format_double(result.config.lasers.rabi_quad_hz) << "\n"
          << "rabi_raman_hz = " << format_double(result.config.lasers.rabi_raman_hz) << "\n"
          << "F = " << fixed(result.fidelity, 6) << " (target " << format_double(target) << ")\n"
          << "sequence duration " << fixed(result.sequence_duration * 1e6, 1) << " us\n";
      write_file(opts.out_path, [&](std::ostream& os) { report::write_calibration_csv(os, result); });
      if (!write_config_path.empty()) save_config(result.config, write_config_path);
      return kExitOk;
    };
  });

  auto* oracle = app.add_subcommand("oracle-check", "Compare the solver with closed-form references");
  add_common(oracle, opts, false);
  oracle->callback([&] {
    action = [&] {
      const auto config = read_config(opts);
      const auto reports = oracles::run_all_oracles(config);
      bool all = true;
      for (const auto& r : reports) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << format_double(r.max_abs_error)
            << " <= " << format_double(r.tolerance) << "\n";
        all = all && r.pass;
      }
      write_file(opts.out_path, [&](std::ostream& os) {
        report::write_oracle_csv(os, reports, config_digest(config));
      });
      return all ? kExitOk : kExitRuntimeError;
    };
  });

  std::vector<std::string> argv_storage{"ion_gate_sim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidationError;
  }

  try {
    return action ? action() : kExitValidationError;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace iongate::cli
