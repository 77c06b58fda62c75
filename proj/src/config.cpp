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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "iongate/errors.hpp"

namespace iongate {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Written for an optional key that is explicitly cleared.
constexpr std::string_view kUnset = "none";

struct Field {
  std::string_view key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, std::string_view)> set;
};

double parse_real(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

template <typename Section>
Field real(std::string_view key, Section ExperimentConfig::*section, double Section::*member) {
  return {key,
          [=](const ExperimentConfig& c) -> std::string {
            return format_double(c.*section.*member);
          },
          [=](ExperimentConfig& c, std::string_view v) { c.*section.*member = parse_real(v); }};
}

template <typename Section>
Field optional_real(std::string_view key, Section ExperimentConfig::*section,
                    std::optional<double> Section::*member) {
  return {key,
          [=](const ExperimentConfig& c) -> std::string {
            const auto& v = c.*section.*member;
            return v ? format_double(*v) : std::string(kUnset);
          },
          [=](ExperimentConfig& c, std::string_view v) {
            c.*section.*member =
                v == kUnset ? std::nullopt : std::optional<double>(parse_real(v));
          }};
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table = {
      real("trap.omega_z_hz", &C::trap, &C::Trap::omega_z_hz),
      optional_real("lasers.eta_quad", &C::lasers, &C::Lasers::eta_quad),
      real("lasers.eta_raman", &C::lasers, &C::Lasers::eta_raman),
      real("lasers.rabi_quad_hz", &C::lasers, &C::Lasers::rabi_quad_hz),
      real("lasers.rabi_raman_hz", &C::lasers, &C::Lasers::rabi_raman_hz),
      real("decoherence.gamma_g_up_hz", &C::decoherence, &C::Decoherence::gamma_g_up_hz),
      real("decoherence.gamma_up_down_hz", &C::decoherence, &C::Decoherence::gamma_up_down_hz),
      real("decoherence.gamma_g_down_hz", &C::decoherence, &C::Decoherence::gamma_g_down_hz),
      real("decoherence.d_state_decay_per_s", &C::decoherence,
           &C::Decoherence::d_state_decay_per_s),
      real("decoherence.heating_quanta_per_s", &C::decoherence,
           &C::Decoherence::heating_quanta_per_s),
      real("motional.nbar", &C::motional, &C::Motional::nbar),
      {"motional.n_max",
       [](const C& c) { return std::to_string(c.motional.n_max); },
       [](C& c, std::string_view v) { c.motional.n_max = parse_int(v); }},
      optional_real("solver.dt_max_s", &C::solver, &C::Solver::dt_max_s),
      optional_real("calibration.achieved_fidelity", &C::calibration,
                    &C::Calibration::achieved_fidelity),
      real("metadata.qubit_splitting_thz", &C::metadata, &C::Metadata::qubit_splitting_thz),
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigValidationError(key, what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void ExperimentConfig::validate() const {
  require(std::isfinite(trap.omega_z_hz) && trap.omega_z_hz > 0.0, "trap.omega_z_hz",
          "must be positive");
  if (lasers.eta_quad) {
    require(finite_nonneg(*lasers.eta_quad) && *lasers.eta_quad < 1.0, "lasers.eta_quad",
            "must be in [0, 1)");
  }
  require(finite_nonneg(lasers.eta_raman) && lasers.eta_raman < 1.0, "lasers.eta_raman",
          "must be in [0, 1)");
  require(finite_nonneg(lasers.rabi_quad_hz), "lasers.rabi_quad_hz", "must be >= 0");
  require(finite_nonneg(lasers.rabi_raman_hz), "lasers.rabi_raman_hz", "must be >= 0");
  require(finite_nonneg(decoherence.gamma_g_up_hz), "decoherence.gamma_g_up_hz", "must be >= 0");
  require(finite_nonneg(decoherence.gamma_up_down_hz), "decoherence.gamma_up_down_hz",
          "must be >= 0");
  require(finite_nonneg(decoherence.gamma_g_down_hz), "decoherence.gamma_g_down_hz",
          "must be >= 0");
  require(finite_nonneg(decoherence.d_state_decay_per_s), "decoherence.d_state_decay_per_s",
          "must be >= 0");
  require(finite_nonneg(decoherence.heating_quanta_per_s), "decoherence.heating_quanta_per_s",
          "must be >= 0");
  require(finite_nonneg(motional.nbar), "motional.nbar", "must be >= 0");
  require(motional.n_max >= 1, "motional.n_max", "must be >= 1");
  if (solver.dt_max_s) {
    require(std::isfinite(*solver.dt_max_s) && *solver.dt_max_s > 0.0, "solver.dt_max_s",
            "must be positive");
  }
  if (calibration.achieved_fidelity) {
    const double f = *calibration.achieved_fidelity;
    require(std::isfinite(f) && f >= 0.0 && f <= 1.0, "calibration.achieved_fidelity",
            "must be in [0, 1]");
  }
  require(finite_nonneg(metadata.qubit_splitting_thz), "metadata.qubit_splitting_thz",
          "must be >= 0");
}

TrapLaserParams ExperimentConfig::trap_laser_params() const {
  TrapLaserParams p;
  p.omega_z = kTwoPi * trap.omega_z_hz;
  p.eta_quad = lasers.eta_quad.value_or(lamb_dicke_from_trap(
      constants::kQuadrupoleWavelength, constants::kCa40Mass, p.omega_z, 1.0));
  p.eta_raman = lasers.eta_raman;
  p.rabi_quad = kTwoPi * lasers.rabi_quad_hz;
  p.rabi_raman = kTwoPi * lasers.rabi_raman_hz;
  return p;
}

DecoherenceModel ExperimentConfig::decoherence_model() const {
  DecoherenceModel d;
  d.gamma_g_up = kTwoPi * decoherence.gamma_g_up_hz;
  d.gamma_up_down = kTwoPi * decoherence.gamma_up_down_hz;
  d.gamma_g_down = kTwoPi * decoherence.gamma_g_down_hz;
  d.d_state_decay_rate = decoherence.d_state_decay_per_s;
  d.heating_rate = decoherence.heating_quanta_per_s;
  return d;
}

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig s;
  s.dt_max = solver.dt_max_s;
  return s;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigParseError(line_no, "missing key");
    if (value.empty()) throw ConfigParseError(line_no, "missing value for '" + std::string(key) + "'");

    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Field& f) { return f.key == key; });
    if (it == table.end()) throw ConfigParseError(line_no, "unknown key '" + std::string(key) + "'");
    if (!seen.emplace(key).second) {
      throw ConfigParseError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    try {
      it->set(config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigParseError(line_no, std::string(key) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream os;
  os << "# ion-gate-sim experiment configuration\n";
  std::string_view section;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const auto sec = f.key.substr(0, dot);
    if (sec != section) {
      os << "\n";
      section = sec;
    }
    if (f.key == "trap.omega_z_hz") {
      os << "# radial secular frequencies (1.91, 1.68) MHz are not simulated\n";
    } else if (f.key == "decoherence.heating_quanta_per_s") {
      os << "# measured axial heating ~0.005 quanta/ms; neglected during gates\n";
    } else if (f.key == "metadata.qubit_splitting_thz") {
      os << "# D3/2 - D5/2 splitting, documentation only\n";
    }
    os << f.key << " = " << f.get(config) << "\n";
  }
  return os.str();
}

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write config file " + path.string());
  out << serialize_config(config);
}

std::string config_digest(const ExperimentConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_config(config)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(hash));
  return buf.data();
}

}  // namespace iongate
