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

#include <array>
#include <complex>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace iongate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

/// Internal levels: S1/2 ground |g>, D5/2 |up>, D3/2 |down>.
enum class Level : int { g = 0, up = 1, down = 2 };

inline constexpr std::array<Level, 3> kLevels{Level::g, Level::up, Level::down};

std::string_view level_name(Level level);

/// Joint space {g, up, down} x Fock{0..n_max}.
///
/// Flat indices are level-major, Fock-minor: index = level * (n_max + 1) + n.
/// Serialized matrices rely on this ordering.
class HilbertSpace {
 public:
  explicit HilbertSpace(int n_max = 4);

  int n_max() const { return n_max_; }
  int fock_levels() const { return n_max_ + 1; }
  Eigen::Index dim() const { return 3 * static_cast<Eigen::Index>(n_max_ + 1); }

  Eigen::Index index(Level level, int n) const;
  std::pair<Level, int> state(Eigen::Index index) const;
  Level level_of(Eigen::Index index) const {
    return static_cast<Level>(index / fock_levels());
  }
  int fock_of(Eigen::Index index) const { return static_cast<int>(index % fock_levels()); }

  bool operator==(const HilbertSpace&) const = default;

 private:
  int n_max_;
};

HilbertSpace make_space(int n_max = 4);

class PureState {
 public:
  /// Throws std::invalid_argument unless the amplitudes have unit norm within 1e-12.
  PureState(HilbertSpace space, Vector amplitudes);

  static PureState basis(const HilbertSpace& space, Level level, int n);

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

struct InvariantReport {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  static constexpr double kHermiticityTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-9;
  static constexpr double kPositivityTolerance = 1e-9;

  bool ok() const {
    return hermiticity_error <= kHermiticityTolerance && trace_error <= kTraceTolerance &&
           min_eigenvalue >= -kPositivityTolerance;
  }
};

/// Density matrix over a HilbertSpace. Immutable once built; the constructor
/// checks only the shape so integrators can wrap intermediate results, use
/// check() or validate() for the physical invariants.
class DensityMatrix {
 public:
  DensityMatrix(HilbertSpace space, Matrix entries);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  Complex at(Level a, int n, Level b, int m) const {
    return entries_(space_.index(a, n), space_.index(b, m));
  }

  Complex trace() const { return entries_.trace(); }
  double purity() const;
  double min_eigenvalue() const;
  double hermiticity_error() const;

  InvariantReport check() const;
  /// Throws std::domain_error naming the violated invariant.
  void validate() const;

 private:
  HilbertSpace space_;
  Matrix entries_;
};

/// Thermal Fock weights n̄^n / (1+n̄)^(n+1), renormalized over n <= n_max.
std::vector<double> thermal_weights(double nbar, int n_max);

DensityMatrix thermal_density(const HilbertSpace& space, double nbar, Level level);

struct Populations {
  double g = 0.0;
  double up = 0.0;
  double down = 0.0;

  double operator[](Level level) const;
  double sum() const { return g + up + down; }
};

Populations populations(const DensityMatrix& rho);

/// Fock-number distribution summed over internal levels.
std::vector<double> motional_populations(const DensityMatrix& rho);

/// <psi|rho|psi>, real part.
double fidelity(const DensityMatrix& rho, const PureState& psi);

/// (|0,up> + |1,down>) / sqrt(2), the motion/internal Bell target.
PureState bell_target(const HilbertSpace& space);

}  // namespace iongate
