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

#include "iongate/liouville.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "iongate/errors.hpp"

namespace iongate {

void DecoherenceModel::validate() const {
  for (double v : {gamma_g_up, gamma_up_down, gamma_g_down, d_state_decay_rate, heating_rate}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("decoherence rates must be finite and nonnegative");
    }
  }
}

double DecoherenceModel::dephasing(Level a, Level b) const {
  if (a == b) return 0.0;
  const bool has_g = a == Level::g || b == Level::g;
  const bool has_up = a == Level::up || b == Level::up;
  if (has_g && has_up) return gamma_g_up;
  if (has_g) return gamma_g_down;
  return gamma_up_down;
}

void SolverConfig::validate() const {
  if (dt_max && !(*dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
}

long SolverConfig::steps_for(double duration) const {
  if (duration <= 0.0) return 0;
  // Shave a few ulps so exact multiples do not gain a spurious extra step.
  auto ceil_ratio = [](double num, double den) {
    return static_cast<long>(std::ceil(num / den * (1.0 - 1e-12)));
  };
  if (dt_max) return std::max(1L, ceil_ratio(duration, *dt_max));
  return std::max<long>(kDefaultMinSteps, ceil_ratio(duration, kDefaultStepCeiling));
}

namespace {

void check_inputs(const DensityMatrix& rho, const Operator& h, const DecoherenceModel& dec,
                  double duration) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("evolution duration must be finite and >= 0");
  }
  if (h.rows() != rho.space().dim() || h.cols() != rho.space().dim()) {
    throw std::invalid_argument("Hamiltonian shape does not match the density matrix");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("Hamiltonian is not Hermitian");
  }
  dec.validate();
  if (dec.heating_rate > 0.0) {
    throw UnsupportedError("motional heating during pulses is not modeled");
  }
}

/// Right-hand side of d rho/dt = -i[H, rho] - G o rho + decay feed, with H
/// kept as its nonzero entries.
class Generator {
 public:
  Generator(const HilbertSpace& space, const Operator& h, const DecoherenceModel& dec)
      : dim_(space.dim()), damping_(space.dim(), space.dim()) {
    for (Eigen::Index j = 0; j < dim_; ++j) {
      for (Eigen::Index i = 0; i < dim_; ++i) {
        if (h(i, j) != Complex(0.0)) entries_.push_back({i, j, h(i, j)});
        const Level a = space.level_of(i);
        const Level b = space.level_of(j);
        double rate = 0.5 * dec.dephasing(a, b);
        rate += 0.5 * dec.d_state_decay_rate * ((a != Level::g) + (b != Level::g));
        damping_(i, j) = rate;
      }
    }
    decay_ = dec.d_state_decay_rate;
    fock_ = space.fock_levels();
  }

  void apply(const Matrix& rho, Matrix& out) const {
    out.array() = -damping_.array() * rho.array();
    const Complex* r = rho.data();
    Complex* o = out.data();
    const Complex minus_i(0.0, -1.0);
    for (const auto& e : entries_) {
      // -i H rho: row e.i += -i h rho.row(e.j)
      const Complex a = minus_i * e.value;
      for (Eigen::Index c = 0; c < dim_; ++c) o[e.i + c * dim_] += a * r[e.j + c * dim_];
      // +i rho H: col e.j += i h rho.col(e.i)
      const Complex b = -a;
      Complex* oc = o + e.j * dim_;
      const Complex* rc = r + e.i * dim_;
      for (Eigen::Index q = 0; q < dim_; ++q) oc[q] += b * rc[q];
    }
    if (decay_ > 0.0) {
      // Both |up> and |down> blocks feed the |g> block, Fock labels kept.
      for (int level = 1; level <= 2; ++level) {
        out.block(0, 0, fock_, fock_) += decay_ * rho.block(level * fock_, level * fock_, fock_, fock_);
      }
    }
  }

 private:
  struct Entry {
    Eigen::Index i;
    Eigen::Index j;
    Complex value;
  };
  Eigen::Index dim_;
  std::vector<Entry> entries_;
  Eigen::MatrixXd damping_;
  double decay_ = 0.0;
  Eigen::Index fock_ = 0;
};

Matrix integrate_rk4(const Generator& gen, Matrix rho, double duration, long steps) {
  const double h = duration / static_cast<double>(steps);
  const Eigen::Index d = rho.rows();
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  for (long s = 0; s < steps; ++s) {
    gen.apply(rho, k1);
    tmp = rho + (0.5 * h) * k1;
    gen.apply(tmp, k2);
    tmp = rho + (0.5 * h) * k2;
    gen.apply(tmp, k3);
    tmp = rho + h * k3;
    gen.apply(tmp, k4);
    rho += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
  }
  return rho;
}

}  // namespace

DensityMatrix evolve_pulse(const DensityMatrix& rho, const Operator& hamiltonian,
                           const DecoherenceModel& dec, double duration,
                           const SolverConfig& cfg) {
  check_inputs(rho, hamiltonian, dec, duration);
  cfg.validate();
  if (duration == 0.0) return rho;
  if (cfg.method == SolverMethod::ReferenceSuperoperatorExponential) {
    return reference_evolve(rho, hamiltonian, dec, duration);
  }
  const Generator gen(rho.space(), hamiltonian, dec);
  return DensityMatrix(rho.space(),
                       integrate_rk4(gen, rho.matrix(), duration, cfg.steps_for(duration)));
}

Matrix liouvillian_superoperator(const HilbertSpace& space, const Operator& hamiltonian,
                                 const DecoherenceModel& dec) {
  const Eigen::Index d = space.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Complex i_unit(0.0, 1.0);
  // vec(A X B) = (B^T kron A) vec(X), column-major vec.
  Matrix super = -i_unit * (Matrix(Eigen::kroneckerProduct(id, hamiltonian)) -
                            Matrix(Eigen::kroneckerProduct(hamiltonian.transpose(), id)));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      super(i + j * d, i + j * d) -= 0.5 * dec.dephasing(space.level_of(i), space.level_of(j));
    }
  }
  if (dec.d_state_decay_rate > 0.0) {
    for (Level excited : {Level::up, Level::down}) {
      Matrix jump = Matrix::Zero(d, d);
      for (int n = 0; n <= space.n_max(); ++n) {
        jump(space.index(Level::g, n), space.index(excited, n)) = std::sqrt(dec.d_state_decay_rate);
      }
      const Matrix jj = jump.adjoint() * jump;
      super += Matrix(Eigen::kroneckerProduct(jump.conjugate(), jump));
      super -= 0.5 * Matrix(Eigen::kroneckerProduct(id, jj));
      super -= 0.5 * Matrix(Eigen::kroneckerProduct(jj.transpose(), id));
    }
  }
  return super;
}

DensityMatrix reference_evolve(const DensityMatrix& rho, const Operator& hamiltonian,
                               const DecoherenceModel& dec, double duration) {
  check_inputs(rho, hamiltonian, dec, duration);
  if (duration == 0.0) return rho;
  const Eigen::Index d = rho.space().dim();
  const Matrix propagator =
      (liouvillian_superoperator(rho.space(), hamiltonian, dec) * duration).exp();
  const Vector vec = Eigen::Map<const Vector>(rho.matrix().data(), d * d);
  const Vector out = propagator * vec;
  return DensityMatrix(rho.space(), Eigen::Map<const Matrix>(out.data(), d, d));
}

Matrix unitary_propagator(const Operator& hamiltonian, double duration) {
  const Complex i_unit(0.0, 1.0);
  return Matrix(-i_unit * duration * hamiltonian).exp();
}

DensityMatrix evolve_sequence(const DensityMatrix& rho0, const Sequence& seq,
                              const DecoherenceModel& dec, const TrapLaserParams& params,
                              const SolverConfig& cfg) {
  seq.validate();
  const auto& space = rho0.space();
  const Operator idle = Operator::Zero(space.dim(), space.dim());
  DensityMatrix rho = rho0;
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
    const auto& pulse = seq.pulses[i];
    rho = evolve_pulse(rho, pulse_hamiltonian(space, pulse, params), dec,
                       pulse_duration(pulse, params), cfg);
    if (i + 1 < seq.pulses.size() && seq.gap_after(i) > 0.0) {
      rho = evolve_pulse(rho, idle, dec, seq.gap_after(i), cfg);
    }
  }
  return rho;
}

Matrix sequence_unitary(const HilbertSpace& space, const Sequence& seq,
                        const TrapLaserParams& params) {
  seq.validate();
  Matrix u = Matrix::Identity(space.dim(), space.dim());
  for (const auto& pulse : seq.pulses) {
    u = unitary_propagator(pulse_hamiltonian(space, pulse, params), pulse_duration(pulse, params)) * u;
  }
  return u;
}

}  // namespace iongate
