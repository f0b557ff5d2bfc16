#pragma once
// Hamiltonian assembly (chain form and the full two-sheet grid used as an
// independent oracle) plus spectral helpers: dressed doublets, the
// periodicity-tuning value, and the overlap-weighted ladder-deviation metric.

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "mrjc/model.hpp"
#include "mrjc/types.hpp"

namespace mrjc {

// Diagonal energy of |level, n, k>.  The common offset kappa*omega2 is
// dropped (a global phase).  On resonance E2 + omega2 equals E3, and the sum
// is folded so that level-2 rows at k = kappa + 1 carry exactly E3 + n*omega1
// with no rounding residue; chain and grid assemblies then agree bit-for-bit.
template <class Scalar>
Scalar bare_energy(const ModelParams<Scalar>& params, const BasisState& s) {
  if (s.level == 2 && s.k == params.kappa + 1)
    return params.E3 + Scalar(s.n) * params.omega1;
  const Scalar base = s.level == 1 ? params.E1 : s.level == 2 ? params.E2 : params.E3;
  if (s.k == params.kappa) return base + Scalar(s.n) * params.omega1;
  return base + Scalar(s.n) * params.omega1 + Scalar(s.k - params.kappa) * params.omega2;
}

// Real symmetric chain Hamiltonian in the basis ordering of `basis`.  In that
// ordering the matrix is banded with bandwidth 2: g1 * sqrt(max(n, n')) links
// between |1,n> and |3,n'> with |n - n'| = 1, and g2eff links between
// |3,n,kappa> and |2,n,kappa+1>.  Exactly symmetric entry-for-entry.
template <class Scalar>
MatrixX<Scalar> assemble_chain_hamiltonian(const ModelParams<Scalar>& params,
                                           const ChainBasis<Scalar>& basis) {
  if (!(params == basis.params))
    throw std::invalid_argument(
        "assemble_chain_hamiltonian: basis was built from different params");
  using std::sqrt;
  const Index dim = basis.size();
  MatrixX<Scalar> H = MatrixX<Scalar>::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const BasisState& s = basis.states[i];
    H(i, i) = bare_energy(params, s);
    if (s.level != 2) {
      // chain link to the rung above; the link below was set by that rung
      const BasisState up{s.level == 1 ? 3 : 1, s.n + 1, params.kappa};
      if (const auto j = locate(basis, up))
        H(i, *j) = H(*j, i) = params.g1 * sqrt(Scalar(s.n + 1));
    }
    if (s.level == 3) {
      if (const auto j = locate(basis, BasisState{2, s.n, params.kappa + 1}))
        H(i, *j) = H(*j, i) = params.g2eff;
    }
  }
  return H;
}

// Independent transcription of the amplitude-equation stencils over the full
// two-sheet grid basis (see build_grid_basis for the ordering).  Deliberately
// not sharing the chain link walk: this is the oracle the chain form is
// checked against.  The rotating-wave side coupling connects the k = kappa
// and k = kappa + 1 sheets only through |3,n,kappa> <-> |2,n,kappa+1>.
template <class Scalar>
MatrixX<Scalar> assemble_grid_hamiltonian(const ModelParams<Scalar>& params, int n_max) {
  params.validate();
  if (n_max < 0)
    throw std::invalid_argument("assemble_grid_hamiltonian: n_max must be >= 0");
  using std::sqrt;
  const auto idx = [](int level, int n, int dk) {
    return Index(6) * n + 2 * (level - 1) + dk;
  };
  const Index dim = Index(6) * (n_max + 1);
  MatrixX<Scalar> H = MatrixX<Scalar>::Zero(dim, dim);
  for (int n = 0; n <= n_max; ++n)
    for (int level = 1; level <= 3; ++level)
      for (int dk = 0; dk <= 1; ++dk)
        H(idx(level, n, dk), idx(level, n, dk)) =
            bare_energy(params, {level, n, params.kappa + dk});
  for (int n = 0; n + 1 <= n_max; ++n)
    for (int dk = 0; dk <= 1; ++dk) {
      const Scalar el = params.g1 * sqrt(Scalar(n + 1));
      H(idx(1, n, dk), idx(3, n + 1, dk)) = H(idx(3, n + 1, dk), idx(1, n, dk)) = el;
      H(idx(3, n, dk), idx(1, n + 1, dk)) = H(idx(1, n + 1, dk), idx(3, n, dk)) = el;
    }
  for (int n = 0; n <= n_max; ++n)
    H(idx(3, n, 0), idx(2, n, 1)) = H(idx(2, n, 1), idx(3, n, 0)) = params.g2eff;
  return H;
}

// The two dressed energies of the isolated |3,n,kappa> / |2,n,kappa+1> block.
template <class ScalarT = double>
struct DressedDoublet {
  using Scalar = ScalarT;
  int n = 0;
  Scalar e_minus{};
  Scalar e_plus{};
};

template <class Scalar>
DressedDoublet<Scalar> dressed_doublet(const ModelParams<Scalar>& params, int n) {
  if (n < 0) throw std::invalid_argument("dressed_doublet: n must be >= 0");
  const Scalar mid = params.E3 + Scalar(n) * params.omega1;
  return {n, mid - params.g2eff, mid + params.g2eff};
}

// The side coupling that pulls the lower dressed branch onto the level-1
// ladder, restoring an equally spaced spectrum (and hence periodic revivals).
template <class Scalar>
Scalar tuned_g2eff(const ModelParams<Scalar>& params) {
  if (params.E3 < params.E1)
    throw std::invalid_argument("tuned_g2eff: requires E3 >= E1");
  return params.E3 - params.E1;
}

template <class ScalarT = double>
struct Spectrum {
  using Scalar = ScalarT;
  VectorX<Scalar> values;   // ascending
  MatrixX<Scalar> vectors;  // orthonormal columns, same order

  Index size() const { return values.size(); }
};

using Spectrumd = Spectrum<double>;

// Full symmetric eigendecomposition.  Assembled matrices are exactly
// symmetric, so the check is bitwise.
template <class Scalar>
Spectrum<Scalar> spectrum(const MatrixX<Scalar>& H) {
  if (H.rows() != H.cols())
    throw std::invalid_argument("spectrum: matrix must be square");
  if (H.size() > 0 && (H - H.transpose()).cwiseAbs().maxCoeff() != Scalar(0))
    throw std::invalid_argument("spectrum: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(H);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// |<v_j|psi>|^2 per eigenvector, the weights entering the ladder metric.
template <class Scalar>
VectorX<Scalar> eigenstate_overlaps(const Spectrum<Scalar>& spec,
                                    const ComplexVectorX<Scalar>& psi) {
  if (psi.size() != spec.size())
    throw std::invalid_argument("eigenstate_overlaps: dimension mismatch");
  const VectorX<Scalar> re = spec.vectors.transpose() * psi.real();
  const VectorX<Scalar> im = spec.vectors.transpose() * psi.imag();
  return re.cwiseAbs2() + im.cwiseAbs2();
}

// <psi|H|psi>, real for symmetric H.
template <class Scalar>
Scalar energy_expectation(const MatrixX<Scalar>& H, const ComplexVectorX<Scalar>& psi) {
  if (psi.size() != H.rows() || H.rows() != H.cols())
    throw std::invalid_argument("energy_expectation: dimension mismatch");
  const VectorX<Scalar> re = psi.real();
  const VectorX<Scalar> im = psi.imag();
  return re.dot(H * re) + im.dot(H * im);
}

// Maximum distance of (E_j - E_ref) from the nearest integer multiple of
// omega1, over eigenpairs carrying overlap > weight_tol; E_ref is the
// eigenvalue of largest overlap.  Zero means a perfectly commensurate ladder
// (exactly periodic dynamics with period 2*pi/omega1).
template <class Scalar>
Scalar ladder_spacing_deviation(const VectorX<Scalar>& eigs,
                                const VectorX<Scalar>& overlaps, Scalar omega1,
                                Scalar weight_tol = Scalar(1e-6)) {
  using std::abs;
  using std::round;
  if (eigs.size() == 0 || eigs.size() != overlaps.size())
    throw std::invalid_argument(
        "ladder_spacing_deviation: eigs and overlaps must have equal nonzero size");
  if (!(omega1 > Scalar(0)))
    throw std::invalid_argument("ladder_spacing_deviation: omega1 must be > 0");
  Scalar total{};
  for (Index j = 0; j < eigs.size(); ++j) {
    if (j > 0 && eigs[j] < eigs[j - 1])
      throw std::invalid_argument("ladder_spacing_deviation: eigs must be ascending");
    if (!(overlaps[j] >= Scalar(0)))
      throw std::invalid_argument("ladder_spacing_deviation: overlaps must be non-negative");
    total += overlaps[j];
  }
  if (!(total <= Scalar(1) + Scalar(1e-9)))
    throw std::invalid_argument("ladder_spacing_deviation: overlaps must sum to at most 1");
  Index ref = -1;
  for (Index j = 0; j < eigs.size(); ++j)
    if (overlaps[j] > weight_tol && (ref < 0 || overlaps[j] > overlaps[ref])) ref = j;
  if (ref < 0)
    throw std::invalid_argument(
        "ladder_spacing_deviation: no eigenvalue carries overlap above weight_tol");
  Scalar worst{};
  for (Index j = 0; j < eigs.size(); ++j) {
    if (!(overlaps[j] > weight_tol)) continue;
    const Scalar r = (eigs[j] - eigs[ref]) / omega1;
    const Scalar dev = abs(r - round(r)) * omega1;
    if (dev > worst) worst = dev;
  }
  return worst;
}

}  // namespace mrjc
