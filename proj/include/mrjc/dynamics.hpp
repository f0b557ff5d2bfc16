#pragma once
// Time evolution under a chain or grid Hamiltonian: spectral propagation as
// the reference method (the Hamiltonian is time independent and modest in
// size) and a fixed-step RK4 integrator of the amplitude equations as an
// independent cross-check.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mrjc/hamiltonian.hpp"
#include "mrjc/model.hpp"
#include "mrjc/types.hpp"

namespace mrjc {

// Complex amplitudes over a basis.  `sites` borrows the basis state labels
// (one per amplitude); the basis must outlive the state.  A null `sites` is a
// bare vector: propagation works, labeled observables refuse it.
template <class ScalarT = double>
struct StateVector {
  using Scalar = ScalarT;

  const BasisState* sites = nullptr;
  ComplexVectorX<Scalar> amplitudes;

  Index size() const { return amplitudes.size(); }
  Scalar norm() const { return amplitudes.norm(); }
};

using StateVectord = StateVector<double>;

template <class Basis>
StateVector<typename Basis::Scalar> unit_state(const Basis& basis, Index i) {
  if (i < 0 || i >= basis.size())
    throw std::invalid_argument("unit_state: index out of range");
  StateVector<typename Basis::Scalar> psi{
      basis.states.data(),
      ComplexVectorX<typename Basis::Scalar>::Zero(basis.size())};
  psi.amplitudes[i] = std::complex<typename Basis::Scalar>(1);
  return psi;
}

template <class Scalar>
StateVector<Scalar> seed_state(const ChainBasis<Scalar>& basis) {
  return unit_state(basis, basis.initial_index);
}

// Amplitudes sampled along strictly increasing times, one column per sample.
template <class ScalarT = double>
struct Trajectory {
  using Scalar = ScalarT;

  const BasisState* sites = nullptr;
  VectorX<Scalar> times;
  ComplexMatrixX<Scalar> amplitudes;

  Index samples() const { return times.size(); }
  StateVector<Scalar> state(Index j) const {
    if (j < 0 || j >= samples())
      throw std::invalid_argument("Trajectory::state: sample index out of range");
    return {sites, amplitudes.col(j)};
  }
};

using Trajectoryd = Trajectory<double>;

template <class Scalar>
void check_normalized(const StateVector<Scalar>& psi) {
  using std::abs;
  if (!(abs(psi.norm() - Scalar(1)) <= Scalar(1e-9)))
    throw std::invalid_argument("state is not normalized (|norm - 1| > 1e-9)");
}

template <class Scalar>
void check_strictly_increasing(const VectorX<Scalar>& times) {
  if (times.size() == 0)
    throw std::invalid_argument("times must contain at least one sample");
  for (Index t = 1; t < times.size(); ++t)
    if (!(times[t] > times[t - 1]))
      throw std::invalid_argument("times must be strictly increasing");
}

// Uniform grid 0, dt, 2*dt, ... covering [0, t_max] with
// dt = (2*pi/omega1) / samples_per_period.
template <class Scalar>
VectorX<Scalar> sample_times(Scalar t_max, Scalar omega1, int samples_per_period) {
  if (!(t_max > Scalar(0)))
    throw std::invalid_argument("sample_times: t_max must be > 0");
  if (!(omega1 > Scalar(0)))
    throw std::invalid_argument("sample_times: omega1 must be > 0");
  if (samples_per_period < 1)
    throw std::invalid_argument("sample_times: samples_per_period must be >= 1");
  const Scalar dt =
      Scalar(2) * std::numbers::pi_v<Scalar> / omega1 / Scalar(samples_per_period);
  const Index count =
      static_cast<Index>(std::floor(static_cast<double>(t_max / dt) + 1e-9)) + 1;
  VectorX<Scalar> times(count);
  for (Index j = 0; j < count; ++j) times[j] = Scalar(j) * dt;
  return times;
}

// psi(t) = V exp(-i Lambda t) V^T psi(0).  Exact up to eigensolver accuracy;
// phases are assembled with a fixed summation order, so identical inputs give
// identical trajectories.
template <class Scalar>
Trajectory<Scalar> propagate_eigen(const Spectrum<Scalar>& spec,
                                   const StateVector<Scalar>& psi0,
                                   const VectorX<Scalar>& times) {
  if (psi0.size() != spec.size())
    throw std::invalid_argument("propagate_eigen: dimension mismatch");
  check_normalized(psi0);
  check_strictly_increasing(times);
  const Index dim = spec.size();
  const Index nt = times.size();
  const VectorX<Scalar> cr = spec.vectors.transpose() * psi0.amplitudes.real();
  const VectorX<Scalar> ci = spec.vectors.transpose() * psi0.amplitudes.imag();
  MatrixX<Scalar> mr(dim, nt), mi(dim, nt);
  for (Index t = 0; t < nt; ++t) {
    const ArrayX<Scalar> theta = spec.values.array() * times[t];
    const ArrayX<Scalar> c = theta.cos();
    const ArrayX<Scalar> s = theta.sin();
    mr.col(t) = (c * cr.array() + s * ci.array()).matrix();
    mi.col(t) = (c * ci.array() - s * cr.array()).matrix();
  }
  Trajectory<Scalar> traj{psi0.sites, times, ComplexMatrixX<Scalar>(dim, nt)};
  traj.amplitudes.real() = spec.vectors * mr;
  traj.amplitudes.imag() = spec.vectors * mi;
  return traj;
}

template <class Scalar>
Trajectory<Scalar> propagate_eigen(const MatrixX<Scalar>& H,
                                   const StateVector<Scalar>& psi0,
                                   const VectorX<Scalar>& times) {
  return propagate_eigen(spectrum(H), psi0, times);
}

// Classical fixed-step RK4 on d/dt psi = -i H psi, recording every
// `record_stride`-th step (plus step 0 and the final step).  No
// renormalization: the norm drift is the method's error diagnostic.
template <class Scalar>
Trajectory<Scalar> propagate_rk4(const MatrixX<Scalar>& H,
                                 const StateVector<Scalar>& psi0, Scalar t_max,
                                 Scalar dt, Index record_stride = 1) {
  if (H.rows() != H.cols())
    throw std::invalid_argument("propagate_rk4: H must be square");
  if (psi0.size() != H.rows())
    throw std::invalid_argument("propagate_rk4: dimension mismatch");
  check_normalized(psi0);
  if (!(dt > Scalar(0)))
    throw std::invalid_argument("propagate_rk4: dt must be > 0");
  if (!(t_max > Scalar(0)))
    throw std::invalid_argument("propagate_rk4: t_max must be > 0");
  if (record_stride < 1)
    throw std::invalid_argument("propagate_rk4: record_stride must be >= 1");
  if (H.size() > 0 && !(H.diagonal().cwiseAbs().maxCoeff() * dt <= Scalar(0.1)))
    throw std::invalid_argument(
        "propagate_rk4: dt too coarse for stability (need dt * max|diag| <= 0.1)");
  const Index steps =
      static_cast<Index>(std::llround(static_cast<double>(t_max / dt)));
  if (steps < 1)
    throw std::invalid_argument("propagate_rk4: t_max is shorter than one step");

  using Complex = std::complex<Scalar>;
  const Complex minus_i(0, -1);
  const Index dim = H.rows();
  const ComplexMatrixX<Scalar> Hc = H.template cast<Complex>();
  const Index nrec = steps / record_stride + 1 + (steps % record_stride ? 1 : 0);
  Trajectory<Scalar> traj{psi0.sites, VectorX<Scalar>(nrec),
                          ComplexMatrixX<Scalar>(dim, nrec)};
  ComplexVectorX<Scalar> psi = psi0.amplitudes;
  ComplexVectorX<Scalar> k1(dim), k2(dim), k3(dim), k4(dim), rhs(dim);
  Index rec = 0;
  traj.times[rec] = Scalar(0);
  traj.amplitudes.col(rec++) = psi;
  const Scalar half = dt / Scalar(2);
  for (Index s = 1; s <= steps; ++s) {
    rhs.noalias() = Hc * psi;
    k1 = minus_i * rhs;
    rhs.noalias() = Hc * (psi + half * k1);
    k2 = minus_i * rhs;
    rhs.noalias() = Hc * (psi + half * k2);
    k3 = minus_i * rhs;
    rhs.noalias() = Hc * (psi + dt * k3);
    k4 = minus_i * rhs;
    psi += (dt / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    if (s % record_stride == 0 || s == steps) {
      traj.times[rec] = Scalar(s) * dt;
      traj.amplitudes.col(rec++) = psi;
    }
  }
  return traj;
}

}  // namespace mrjc
