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

#include "iongate/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "iongate/errors.hpp"
#include "iongate/liouville.hpp"
#include "iongate/sequence.hpp"

namespace iongate {

namespace {

constexpr double kNormalizationTolerance = 1e-9;
constexpr double kMaxGateSequence = 1e-3;  // s

ScanPoint make_point(double x, const DensityMatrix& rho) {
  const auto p = populations(rho);
  return {x, p.g, p.up, p.down};
}

void require_increasing(std::span<const double> grid, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw std::invalid_argument(std::string(what) + " must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + " must be strictly increasing");
    }
  }
}

}  // namespace

void ScanResult::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (std::abs(p.p_g + p.p_up + p.p_down - 1.0) > kNormalizationTolerance) {
      throw std::domain_error("scan point " + std::to_string(i) + " populations do not sum to 1");
    }
    if (i > 0 && !(p.x > points[i - 1].x)) {
      throw std::domain_error("scan variable is not strictly increasing at point " +
                              std::to_string(i));
    }
  }
}

double FringeFit::operator()(double x) const { return mean + amplitude * std::cos(x + phase0); }

std::string_view channel_name(BudgetChannel channel) {
  switch (channel) {
    case BudgetChannel::raman_dephasing:
      return "raman_dephasing";
    case BudgetChannel::quadrupole_dephasing:
      return "quadrupole_dephasing";
    case BudgetChannel::motional_distribution:
      return "motional_distribution";
    case BudgetChannel::spontaneous_decay:
      return "spontaneous_decay";
  }
  return "?";
}

double ErrorBudget::operator[](BudgetChannel channel) const {
  for (const auto& [c, v] : contributions) {
    if (c == channel) return v;
  }
  throw std::out_of_range("channel missing from error budget");
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) throw std::invalid_argument("linspace needs at least one point");
  if (points == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(points));
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ION_GATE_SIM_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ScanResult rabi_scan(Transition transition, Sideband sideband, std::span<const double> t_grid,
                     const ExperimentConfig& config) {
  config.validate();
  require_increasing(t_grid, "time grid");
  if (!t_grid.empty() && t_grid.front() < 0.0) {
    throw std::invalid_argument("time grid must be nonnegative");
  }
  PulseSpec pulse{transition, sideband, 0.0, 0.0, std::nullopt};
  pulse.validate();

  const auto space = config.space();
  const auto params = config.trap_laser_params();
  const auto dec = config.decoherence_model();
  const auto solver = config.solver_config();
  const Level start = transition == Transition::QuadrupoleGUp ? Level::g : Level::up;
  const auto rho0 = thermal_density(space, config.motional.nbar, start);
  const Operator h = pulse_hamiltonian(space, pulse, params);

  ScanResult result{"t_s", std::vector<ScanPoint>(t_grid.size()), config_digest(config)};
  parallel_for(t_grid.size(), [&](std::size_t i) {
    result.points[i] = make_point(t_grid[i], evolve_pulse(rho0, h, dec, t_grid[i], solver));
  });
  return result;
}

ScanResult cz_fringe(int prep_n, std::span<const double> phase_grid,
                     const ExperimentConfig& config) {
  config.validate();
  require_increasing(phase_grid, "phase grid");
  const Sequence prep = prep_sequence(prep_n);
  const auto space = config.space();
  const auto params = config.trap_laser_params();
  const auto dec = config.decoherence_model();
  const auto solver = config.solver_config();
  const auto rho0 = thermal_density(space, config.motional.nbar, Level::g);
  // The preparation is shared by every point.
  const auto prepared = evolve_sequence(rho0, prep, dec, params, solver);

  ScanResult result{"phase_rad", std::vector<ScanPoint>(phase_grid.size()),
                    config_digest(config)};
  parallel_for(phase_grid.size(), [&](std::size_t i) {
    const auto rho =
        evolve_sequence(prepared, cnot_core_sequence(phase_grid[i]), dec, params, solver);
    result.points[i] = make_point(phase_grid[i], rho);
  });
  return result;
}

FringeFit fit_fringe(const ScanResult& scan) {
  const auto n = static_cast<Eigen::Index>(scan.points.size());
  if (n < 8) throw std::invalid_argument("fringe fit needs at least 8 points");
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = scan.points[static_cast<std::size_t>(i)].x;
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(x);
    design(i, 2) = std::sin(x);
    y(i) = scan.points[static_cast<std::size_t>(i)].p_up;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) {
    throw FitSingularError("fringe grid cannot resolve a 2pi-periodic cosine");
  }
  const Eigen::VectorXd coef = qr.solve(y);
  FringeFit fit;
  fit.mean = coef(0);
  fit.amplitude = std::hypot(coef(1), coef(2));
  fit.phase0 = std::atan2(-coef(2), coef(1));
  fit.rms_residual = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(n));
  return fit;
}

double bell_fidelity(const ExperimentConfig& config) {
  config.validate();
  const auto space = config.space();
  const auto rho0 = thermal_density(space, config.motional.nbar, Level::g);
  const auto rho = evolve_sequence(rho0, bell_sequence(), config.decoherence_model(),
                                   config.trap_laser_params(), config.solver_config());
  return fidelity(rho, bell_target(space));
}

ScanResult bell_trace(const ExperimentConfig& config, int samples_per_pulse) {
  config.validate();
  if (samples_per_pulse < 1) throw std::invalid_argument("samples_per_pulse must be >= 1");
  const auto space = config.space();
  const auto params = config.trap_laser_params();
  const auto dec = config.decoherence_model();
  const auto solver = config.solver_config();
  const Sequence seq = bell_sequence();
  const Operator idle = Operator::Zero(space.dim(), space.dim());

  ScanResult result{"t_s", {}, config_digest(config)};
  DensityMatrix rho = thermal_density(space, config.motional.nbar, Level::g);
  double t = 0.0;
  result.points.push_back(make_point(t, rho));
  auto advance = [&](const Operator& h, double duration) {
    if (duration <= 0.0) return;
    const double chunk = duration / samples_per_pulse;
    for (int k = 0; k < samples_per_pulse; ++k) {
      rho = evolve_pulse(rho, h, dec, chunk, solver);
      t += chunk;
      result.points.push_back(make_point(t, rho));
    }
  };
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
    advance(pulse_hamiltonian(space, seq.pulses[i], params), pulse_duration(seq.pulses[i], params));
    if (i + 1 < seq.pulses.size()) advance(idle, seq.gap_after(i));
  }
  return result;
}

ErrorBudget error_budget(const ExperimentConfig& config) {
  ErrorBudget budget;
  budget.baseline_fidelity = bell_fidelity(config);
  const std::array<BudgetChannel, 4> channels{
      BudgetChannel::raman_dephasing, BudgetChannel::quadrupole_dephasing,
      BudgetChannel::motional_distribution, BudgetChannel::spontaneous_decay};
  for (auto channel : channels) {
    ExperimentConfig toggled = config;
    switch (channel) {
      case BudgetChannel::raman_dephasing:
        toggled.decoherence.gamma_up_down_hz = 0.0;
        break;
      case BudgetChannel::quadrupole_dephasing:
        toggled.decoherence.gamma_g_up_hz = 0.0;
        toggled.decoherence.gamma_g_down_hz = 0.0;
        break;
      case BudgetChannel::motional_distribution:
        toggled.motional.nbar = 0.0;
        break;
      case BudgetChannel::spontaneous_decay:
        toggled.decoherence.d_state_decay_per_s = 0.0;
        break;
    }
    budget.contributions.emplace_back(channel, bell_fidelity(toggled) - budget.baseline_fidelity);
  }
  return budget;
}

std::vector<TruthTableRow> cnot_truth_table(const ExperimentConfig& config) {
  config.validate();
  const auto space = config.space();
  const auto params = config.trap_laser_params();
  const auto dec = config.decoherence_model();
  const auto solver = config.solver_config();
  const Sequence core = calibrated_cnot_sequence();

  std::vector<TruthTableRow> rows;
  for (int n : {0, 1}) {
    for (Level s : {Level::up, Level::down}) {
      const auto rho0 = DensityMatrix::from_pure(PureState::basis(space, s, n));
      const auto rho = evolve_sequence(rho0, core, dec, params, solver);
      TruthTableRow row;
      row.input_n = n;
      row.input_level = s;
      row.expected_n = n;
      // Motional |1> is the control that flips the internal target.
      row.expected_level = n == 1 ? (s == Level::up ? Level::down : Level::up) : s;
      row.expected_population = rho.at(row.expected_level, n, row.expected_level, n).real();
      row.motion_preserved = motional_populations(rho)[static_cast<std::size_t>(n)];
      rows.push_back(row);
    }
  }
  return rows;
}

ScanResult sample_shots(const ScanResult& scan, int shots_per_point, std::uint64_t seed) {
  if (shots_per_point < 1) throw std::invalid_argument("shots_per_point must be >= 1");
  ScanResult out = scan;
  const double shots = shots_per_point;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    auto& p = out.points[i];
    const double pg = std::clamp(p.p_g, 0.0, 1.0);
    const double pu = std::clamp(p.p_up, 0.0, 1.0);
    const int n_g = std::binomial_distribution<int>(shots_per_point, pg)(rng);
    const int rest = shots_per_point - n_g;
    const double cond = pg < 1.0 ? std::clamp(pu / (1.0 - pg), 0.0, 1.0) : 0.0;
    const int n_up = rest > 0 ? std::binomial_distribution<int>(rest, cond)(rng) : 0;
    const int n_down = rest - n_up;
    p.p_g = n_g / shots;
    p.p_up = n_up / shots;
    p.p_down = n_down / shots;
  }
  return out;
}

CalibrationResult calibrate(const ExperimentConfig& config, double target_fidelity) {
  config.validate();
  // Integer-Hz grids so chosen values are exact decimals.
  constexpr long kQuadMin = 10'000, kQuadMax = 100'000;
  constexpr long kRamanMin = 10'000, kRamanMax = 200'000;
  const Sequence seq = bell_sequence();

  struct Candidate {
    long quad_hz;
    long raman_hz;
    double fidelity = 0.0;
    double duration = 0.0;
    bool feasible = false;
  };

  int evaluated = 0;
  auto evaluate = [&](std::vector<Candidate>& grid) {
    for (auto& c : grid) {
      ExperimentConfig trial = config;
      trial.lasers.rabi_quad_hz = static_cast<double>(c.quad_hz);
      trial.lasers.rabi_raman_hz = static_cast<double>(c.raman_hz);
      c.duration = sequence_duration(seq, trial.trap_laser_params());
      c.feasible = c.duration < kMaxGateSequence;
    }
    parallel_for(grid.size(), [&](std::size_t i) {
      auto& c = grid[i];
      if (!c.feasible) return;
      ExperimentConfig trial = config;
      trial.lasers.rabi_quad_hz = static_cast<double>(c.quad_hz);
      trial.lasers.rabi_raman_hz = static_cast<double>(c.raman_hz);
      c.fidelity = bell_fidelity(trial);
    });
    const Candidate* best = nullptr;
    for (const auto& c : grid) {
      if (!c.feasible) continue;
      ++evaluated;
      if (!best || std::abs(c.fidelity - target_fidelity) <
                       std::abs(best->fidelity - target_fidelity)) {
        best = &c;
      }
    }
    return best ? std::optional<Candidate>(*best) : std::nullopt;
  };

  auto make_grid = [](long q_lo, long q_hi, long q_step, long r_lo, long r_hi, long r_step) {
    std::vector<Candidate> grid;
    for (long q = q_lo; q <= q_hi; q += q_step) {
      for (long r = r_lo; r <= r_hi; r += r_step) grid.push_back({q, r});
    }
    return grid;
  };

  constexpr long kCoarseQuad = 5'000, kCoarseRaman = 38'000;
  auto coarse = make_grid(kQuadMin, kQuadMax, kCoarseQuad, kRamanMin, kRamanMax, kCoarseRaman);
  const auto first = evaluate(coarse);
  if (!first) throw CalibrationFailedError("no Rabi frequency pair keeps the Bell sequence under 1 ms");

  constexpr long kFineQuad = 1'000, kFineRaman = 9'500;
  auto fine = make_grid(std::max(kQuadMin, first->quad_hz - kCoarseQuad),
                        std::min(kQuadMax, first->quad_hz + kCoarseQuad), kFineQuad,
                        std::max(kRamanMin, first->raman_hz - kCoarseRaman),
                        std::min(kRamanMax, first->raman_hz + kCoarseRaman), kFineRaman);
  auto best = evaluate(fine);
  if (!best || std::abs(first->fidelity - target_fidelity) <
                   std::abs(best->fidelity - target_fidelity)) {
    best = first;
  }

  CalibrationResult result;
  result.config = config;
  result.config.lasers.rabi_quad_hz = static_cast<double>(best->quad_hz);
  result.config.lasers.rabi_raman_hz = static_cast<double>(best->raman_hz);
  result.config.calibration.achieved_fidelity = best->fidelity;
  result.fidelity = best->fidelity;
  result.sequence_duration = best->duration;
  result.evaluated_points = evaluated;
  return result;
}

ExperimentConfig calibrate_defaults(const ExperimentConfig& config) {
  return calibrate(config).config;
}

}  // namespace iongate
