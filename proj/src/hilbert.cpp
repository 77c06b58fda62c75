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

#include "iongate/hilbert.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace iongate {

std::string_view level_name(Level level) {
  switch (level) {
    case Level::g:
      return "g";
    case Level::up:
      return "up";
    case Level::down:
      return "down";
  }
  return "?";
}

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("n_max must be >= 1, got " + std::to_string(n_max));
  }
}

Eigen::Index HilbertSpace::index(Level level, int n) const {
  if (n < 0 || n > n_max_) {
    throw std::out_of_range("Fock number " + std::to_string(n) + " outside [0, " +
                            std::to_string(n_max_) + "]");
  }
  return static_cast<Eigen::Index>(level) * fock_levels() + n;
}

std::pair<Level, int> HilbertSpace::state(Eigen::Index index) const {
  if (index < 0 || index >= dim()) {
    throw std::out_of_range("flat index " + std::to_string(index) + " outside space");
  }
  return {level_of(index), fock_of(index)};
}

HilbertSpace make_space(int n_max) { return HilbertSpace(n_max); }

PureState::PureState(HilbertSpace space, Vector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dim()) {
    throw std::invalid_argument("amplitude vector does not match space dimension");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("pure state must have unit norm");
  }
}

PureState PureState::basis(const HilbertSpace& space, Level level, int n) {
  Vector v = Vector::Zero(space.dim());
  v(space.index(level, n)) = 1.0;
  return PureState(space, std::move(v));
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw std::invalid_argument("density matrix shape does not match space dimension");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
  const auto d = space.dim();
  return DensityMatrix(space, Matrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum_ij rho_ij rho_ji
  return (entries_ * entries_).trace().real();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

InvariantReport DensityMatrix::check() const {
  InvariantReport r;
  r.hermiticity_error = hermiticity_error();
  r.trace_error = std::abs(trace() - 1.0);
  r.min_eigenvalue = min_eigenvalue();
  return r;
}

void DensityMatrix::validate() const {
  const auto r = check();
  if (r.ok()) return;
  std::ostringstream msg;
  msg << "density matrix invariant violated:";
  if (r.hermiticity_error > InvariantReport::kHermiticityTolerance)
    msg << " hermiticity error " << r.hermiticity_error;
  if (r.trace_error > InvariantReport::kTraceTolerance) msg << " trace error " << r.trace_error;
  if (r.min_eigenvalue < -InvariantReport::kPositivityTolerance)
    msg << " min eigenvalue " << r.min_eigenvalue;
  throw std::domain_error(msg.str());
}

std::vector<double> thermal_weights(double nbar, int n_max) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
  const double ratio = nbar / (1.0 + nbar);
  double term = 1.0 / (1.0 + nbar);
  double total = 0.0;
  for (auto& x : w) {
    x = term;
    total += term;
    term *= ratio;
  }
  for (auto& x : w) x /= total;
  return w;
}

DensityMatrix thermal_density(const HilbertSpace& space, double nbar, Level level) {
  const auto w = thermal_weights(nbar, space.n_max());
  Matrix rho = Matrix::Zero(space.dim(), space.dim());
  for (int n = 0; n <= space.n_max(); ++n) {
    const auto i = space.index(level, n);
    rho(i, i) = w[static_cast<std::size_t>(n)];
  }
  return DensityMatrix(space, std::move(rho));
}

double Populations::operator[](Level level) const {
  switch (level) {
    case Level::g:
      return g;
    case Level::up:
      return up;
    case Level::down:
      return down;
  }
  return 0.0;
}

Populations populations(const DensityMatrix& rho) {
  const auto& space = rho.space();
  std::array<double, 3> p{};
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    p[static_cast<std::size_t>(space.level_of(i))] += rho(i, i).real();
  }
  return {p[0], p[1], p[2]};
}

std::vector<double> motional_populations(const DensityMatrix& rho) {
  const auto& space = rho.space();
  std::vector<double> p(static_cast<std::size_t>(space.fock_levels()), 0.0);
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    p[static_cast<std::size_t>(space.fock_of(i))] += rho(i, i).real();
  }
  return p;
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
  if (!(rho.space() == psi.space())) {
    throw std::invalid_argument("fidelity: state and density matrix live in different spaces");
  }
  const auto& v = psi.amplitudes();
  return v.dot(rho.matrix() * v).real();
}

PureState bell_target(const HilbertSpace& space) {
  Vector v = Vector::Zero(space.dim());
  v(space.index(Level::up, 0)) = M_SQRT1_2;
  v(space.index(Level::down, 1)) = M_SQRT1_2;
  return PureState(space, std::move(v));
}

}  // namespace iongate
