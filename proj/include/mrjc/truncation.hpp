#pragma once
// Automatic Fock-cutoff selection: a doubling search that accepts the first
// cutoff whose top-of-chain occupation stays negligible and whose reported
// observables are stable under one more doubling.

#include <cstdio>
#include <optional>
#include <stdexcept>

#include "mrjc/dynamics.hpp"
#include "mrjc/hamiltonian.hpp"
#include "mrjc/model.hpp"
#include "mrjc/observables.hpp"

namespace mrjc {

// Parameters outside the validated regime: no cutoff below the limit meets
// the tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Smallest n_max from the doubling sequence {8, 16, 32, ...} such that
// (a) the total probability in the top three chain sites stays < tol at every
// sampled t <= t_max, and (b) no reported observable changes by >= tol when
// n_max doubles.  With g1 = 0 the chain cannot climb in n and the seed's own
// occupation is returned.
template <class Scalar>
int converge_truncation(const ModelParams<Scalar>& params, const BasisState& seed,
                        Scalar t_max, Scalar tol, int samples_per_period = 2048,
                        int n_max_limit = 4096) {
  params.validate();
  if (!(tol > Scalar(0)))
    throw std::invalid_argument("converge_truncation: tol must be > 0");
  if (seed.n > n_max_limit)
    throw std::invalid_argument("converge_truncation: seed.n exceeds n_max_limit");
  if (params.g1 == Scalar(0)) {
    build_chain_basis(params, seed, seed.n);  // validates the seed
    return seed.n;
  }
  const VectorX<Scalar> times = sample_times(t_max, params.omega1, samples_per_period);

  struct Level {
    int n_max;
    ObservableSeries<Scalar> series;
    bool tail_ok;
  };
  const auto evaluate = [&](int n_max) -> Level {
    const auto basis = build_chain_basis(params, seed, n_max);
    const auto H = assemble_chain_hamiltonian(params, basis);
    const auto psi0 = seed_state(basis);
    const auto traj = propagate_eigen(H, psi0, times);
    const Index top = std::min<Index>(3, basis.size());
    Scalar tail{};
    for (Index t = 0; t < traj.samples(); ++t)
      tail = std::max(tail, Scalar(traj.amplitudes.col(t).tail(top).squaredNorm()));
    return {n_max, observable_series(traj, psi0), tail < tol};
  };

  int start = 8;
  while (start < seed.n) start *= 2;
  std::optional<Level> current;
  for (int n = start; 2 * n <= n_max_limit; n *= 2) {
    if (!current) current = evaluate(n);
    Level doubled = evaluate(2 * n);
    if (current->tail_ok && series_delta(current->series, doubled.series) < tol)
      return n;
    current = std::move(doubled);
  }
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "converge_truncation: no cutoff up to %d reached tolerance %g "
                "(parameters outside the validated regime)",
                n_max_limit, static_cast<double>(tol));
  throw convergence_error(msg);
}

}  // namespace mrjc
