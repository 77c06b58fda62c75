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

#include "iongate/oracles.hpp"

#include <cmath>
#include <random>

#include "iongate/couplings.hpp"
#include "iongate/experiments.hpp"
#include "iongate/liouville.hpp"

namespace iongate::oracles {

namespace {

constexpr double kClosedFormTolerance = 1e-6;
constexpr double kIntegratorTolerance = 1e-6;
constexpr double kCoherenceTolerance = 1e-8;
constexpr double kSpectralTolerance = 1e-8;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> up_populations(const ScanResult& scan) {
  std::vector<double> out;
  out.reserve(scan.points.size());
  for (const auto& p : scan.points) out.push_back(p.p_up);
  return out;
}

ExperimentConfig without_decoherence(ExperimentConfig c) {
  c.decoherence.gamma_g_up_hz = 0.0;
  c.decoherence.gamma_up_down_hz = 0.0;
  c.decoherence.gamma_g_down_hz = 0.0;
  c.decoherence.d_state_decay_per_s = 0.0;
  return c;
}

Operator random_hermitian(Eigen::Index dim, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = Complex(normal(rng), normal(rng));
  }
  Operator h = 0.5 * (a + a.adjoint());
  return h * (scale / h.cwiseAbs().maxCoeff());
}

DensityMatrix random_density(const HilbertSpace& space, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(space.dim(), space.dim());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Complex(normal(rng), normal(rng));
  }
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(space, 0.5 * (rho + rho.adjoint()));
}

double max_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace

OracleReport make_report(std::string name, double max_abs_error, double tolerance) {
  return {std::move(name), max_abs_error, tolerance, max_abs_error <= tolerance};
}

std::vector<double> two_level_rabi_oracle(double omega, std::span<const double> t_grid) {
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double s = std::sin(0.5 * omega * t);
    out.push_back(s * s);
  }
  return out;
}

std::vector<double> damped_rabi_oracle(double omega, double gamma,
                                       std::span<const double> t_grid) {
  // Bloch equations: w'' + (gamma/2) w' + omega^2 w = 0, w(0) = -1, w'(0) = 0.
  const double k = gamma / 4.0;
  const double w = std::sqrt(omega * omega - k * k);
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double inversion = -std::exp(-k * t) * (std::cos(w * t) + k / w * std::sin(w * t));
    out.push_back(0.5 * (1.0 + inversion));
  }
  return out;
}

std::vector<double> thermal_sideband_oracle(double eta, double omega, double nbar, int n_max,
                                            std::span<const double> t_grid) {
  const auto weights = thermal_weights(nbar, n_max);
  std::vector<double> out(t_grid.size(), 0.0);
  for (int n = 0; n < n_max; ++n) {
    const double rate = eta * std::sqrt(n + 1.0) * omega;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double s = std::sin(0.5 * rate * t_grid[i]);
      out[i] += weights[static_cast<std::size_t>(n)] * s * s;
    }
  }
  return out;
}

DensityMatrix spectral_unitary_evolve(const DensityMatrix& rho, const Operator& hamiltonian,
                                      double duration) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
  const Matrix& v = solver.eigenvectors();
  Vector phases(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    phases(i) = std::polar(1.0, -solver.eigenvalues()(i) * duration);
  }
  const Matrix u = v * phases.asDiagonal() * v.adjoint();
  return DensityMatrix(rho.space(), u * rho.matrix() * u.adjoint());
}

std::vector<OracleReport> run_all_oracles(const ExperimentConfig& config) {
  config.validate();
  std::vector<OracleReport> reports;
  const auto params = config.trap_laser_params();
  const auto solver = config.solver_config();
  constexpr int kPoints = 50;

  {
    auto ideal = without_decoherence(config);
    ideal.motional.nbar = 0.0;
    const double omega = params.rabi_quad * carrier_element_truncated(params.eta_quad, 0);
    const auto t = linspace(0.0, 4.0 * M_PI / omega, kPoints);
    const auto sim = rabi_scan(Transition::QuadrupoleGUp, Sideband::Carrier, t, ideal);
    reports.push_back(make_report("two_level_carrier_rabi",
                                  max_abs_diff(up_populations(sim), two_level_rabi_oracle(omega, t)),
                                  kClosedFormTolerance));
  }
  {
    const auto ideal = without_decoherence(config);
    const double omega = params.rabi_quad;
    const auto t = linspace(0.0, 4.0 * M_PI / (params.eta_quad * omega), kPoints);
    const auto sim = rabi_scan(Transition::QuadrupoleGUp, Sideband::Blue, t, ideal);
    const auto expected = thermal_sideband_oracle(params.eta_quad, omega, config.motional.nbar,
                                                  config.motional.n_max, t);
    reports.push_back(make_report("thermal_blue_sideband_rabi",
                                  max_abs_diff(up_populations(sim), expected),
                                  kClosedFormTolerance));
  }
  {
    auto damped = config;
    damped.decoherence.d_state_decay_per_s = 0.0;
    damped.motional.nbar = 0.0;
    const double omega = params.rabi_quad * carrier_element_truncated(params.eta_quad, 0);
    const double gamma = damped.decoherence_model().gamma_g_up;
    const auto t = linspace(0.0, 1e-3, kPoints);
    const auto sim = rabi_scan(Transition::QuadrupoleGUp, Sideband::Carrier, t, damped);
    reports.push_back(make_report("dephased_carrier_rabi",
                                  max_abs_diff(up_populations(sim), damped_rabi_oracle(omega, gamma, t)),
                                  kClosedFormTolerance));
  }
  {
    double worst = 0.0;
    for (double eta : linspace(0.01, 0.2, 20)) {
      for (int n = 0; n <= 4; ++n) {
        const double diff = std::abs(carrier_element_truncated(eta, n) - carrier_element_exact(eta, n));
        worst = std::max(worst, diff / (std::pow(eta, 4) * (n + 1) * (n + 1)));
      }
    }
    reports.push_back(make_report("carrier_truncation_bound_ratio", worst, 1.0));
    double ratio_err = 0.0;
    for (int n = 0; n <= 4; ++n) {
      ratio_err = std::max(
          ratio_err, std::abs(carrier_element_truncated(1e-3, n) / carrier_element_exact(1e-3, n) - 1.0));
    }
    reports.push_back(make_report("carrier_small_eta_ratio", ratio_err, kClosedFormTolerance));
  }
  {
    const auto space = config.space();
    auto dec = config.decoherence_model();
    dec.d_state_decay_rate = 0.0;
    Vector v = Vector::Zero(space.dim());
    v(space.index(Level::g, 0)) = M_SQRT1_2;
    v(space.index(Level::up, 0)) = M_SQRT1_2;
    const auto rho0 = DensityMatrix::from_pure(PureState(space, v));
    constexpr double kTime = 1e-3;
    const auto rho = evolve_pulse(rho0, Operator::Zero(space.dim(), space.dim()), dec, kTime, solver);
    const double expected = 0.5 * std::exp(-0.5 * dec.gamma_g_up * kTime);
    reports.push_back(make_report("coherence_decay_closed_form",
                                  std::abs(rho.at(Level::g, 0, Level::up, 0) - expected),
                                  kCoherenceTolerance));
  }
  {
    const auto space = config.space();
    const auto dec = config.decoherence_model();
    const auto rho0 = thermal_density(space, config.motional.nbar, Level::g);
    const auto prepared = DensityMatrix(
        space, 0.5 * (rho0.matrix() + thermal_density(space, config.motional.nbar, Level::up).matrix()));
    double worst = 0.0;
    for (const auto& pulse : {PulseSpec::blue(2.0 * M_PI), PulseSpec::carrier(Transition::QuadrupoleGUp, M_PI),
                              PulseSpec::carrier(Transition::RamanUpDown, M_PI_2)}) {
      const auto h = pulse_hamiltonian(space, pulse, params);
      const double t = pulse_duration(pulse, params);
      worst = std::max(worst, max_entry_diff(evolve_pulse(prepared, h, dec, t, solver),
                                             reference_evolve(prepared, h, dec, t)));
    }
    reports.push_back(make_report("integrator_vs_reference_pulses", worst, kIntegratorTolerance));
  }
  {
    const HilbertSpace small(2);
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst_integrator = 0.0;
    double worst_spectral = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double scale = 2.0 * M_PI * 50e3 * (0.2 + uni(rng));
      const Operator h = random_hermitian(small.dim(), scale, rng);
      // Rotation angle up to ~2pi at the largest coupling.
      const double t = (0.1 + 0.9 * uni(rng)) * 2.0 * M_PI / (h.cwiseAbs().maxCoeff() * small.dim());
      DecoherenceModel dec;
      dec.gamma_g_up = 2.0 * M_PI * 1e3 * uni(rng);
      dec.gamma_up_down = 2.0 * M_PI * 1e3 * uni(rng);
      dec.gamma_g_down = 2.0 * M_PI * 1e3 * uni(rng);
      dec.d_state_decay_rate = 100.0 * uni(rng);
      const auto rho = random_density(small, rng);
      worst_integrator = std::max(worst_integrator, max_entry_diff(evolve_pulse(rho, h, dec, t, solver),
                                                                   reference_evolve(rho, h, dec, t)));
      worst_spectral = std::max(worst_spectral,
                                max_entry_diff(reference_evolve(rho, h, DecoherenceModel{}, t),
                                               spectral_unitary_evolve(rho, h, t)));
    }
    reports.push_back(make_report("integrator_vs_reference_random", worst_integrator,
                                  kIntegratorTolerance));
    reports.push_back(make_report("reference_vs_spectral_unitary", worst_spectral, kSpectralTolerance));
  }
  return reports;
}

}  // namespace iongate::oracles
