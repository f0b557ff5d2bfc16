#pragma once
// Model parameters and basis enumeration for a three-level system coupled to
// two bosonic modes: one ultrastrong "chain" mode (no rotating-wave
// approximation on the 1-3 transition) and one weak resonant "side" mode
// (rotating-wave approximation on the 2-3 transition).  Units: hbar = 1,
// energies in hbar*omega1, frequencies in omega1.

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "mrjc/types.hpp"

namespace mrjc {

// All physical constants of the model.  The side coupling enters only through
// the matrix element g2eff = g2 * sqrt(side-mode occupation); kappa is kept
// as labeling metadata because the dynamics never depends on it separately.
template <class ScalarT = double>
struct ModelParams {
  using Scalar = ScalarT;

  Scalar E1{};       // level-1 energy
  Scalar E2{};       // level-2 energy
  Scalar E3{};       // level-3 energy; resonance pins E3 = E2 + omega2
  Scalar omega1{1};  // chain-mode frequency, the unit of energy
  Scalar omega2{};   // side-mode frequency
  Scalar g1{};       // chain coupling (counter-rotating terms retained)
  Scalar g2eff{};    // side-coupling matrix element
  int kappa = 0;     // reference side-mode occupation (labeling only)

  // E3 derived from the resonance condition.
  static ModelParams resonant(Scalar E1, Scalar E2, Scalar omega2, Scalar g1,
                              Scalar g2eff, int kappa = 0) {
    ModelParams p{E1, E2, E2 + omega2, Scalar(1), omega2, g1, g2eff, kappa};
    p.validate();
    return p;
  }

  // omega2 derived from the 2-3 level splitting.
  static ModelParams from_levels(Scalar E1, Scalar E2, Scalar E3, Scalar g1,
                                 Scalar g2eff, int kappa = 0) {
    ModelParams p{E1, E2, E3, Scalar(1), E3 - E2, g1, g2eff, kappa};
    p.validate();
    return p;
  }

  // Everything given explicitly; resonance must hold to 1e-12.
  static ModelParams checked(Scalar E1, Scalar E2, Scalar E3, Scalar omega2,
                             Scalar g1, Scalar g2eff, int kappa = 0) {
    ModelParams p{E1, E2, E3, Scalar(1), omega2, g1, g2eff, kappa};
    p.validate();
    return p;
  }

  // Comparisons are written so that NaN fields also fail.
  void validate() const {
    if (!(omega1 > Scalar(0)))
      throw std::invalid_argument("ModelParams: omega1 must be > 0");
    if (!(omega2 > Scalar(0)))
      throw std::invalid_argument("ModelParams: omega2 must be > 0");
    if (!(g1 >= Scalar(0)))
      throw std::invalid_argument("ModelParams: g1 must be >= 0");
    if (!(g2eff >= Scalar(0)))
      throw std::invalid_argument("ModelParams: g2eff must be >= 0");
    if (kappa < 0)
      throw std::invalid_argument("ModelParams: kappa must be >= 0");
    const Scalar r = E3 - (E2 + omega2);
    if (!(r <= Scalar(1e-12)) || !(r >= Scalar(-1e-12)))
      throw std::invalid_argument(
          "ModelParams: resonance E3 = E2 + omega2 violated beyond 1e-12");
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

using ModelParamsd = ModelParams<double>;

// One atom-field configuration |level> |n, k>.
struct BasisState {
  int level = 1;  // atomic level, 1..3
  int n = 0;      // chain-mode Fock number
  int k = 0;      // side-mode Fock number

  friend auto operator<=>(const BasisState&, const BasisState&) = default;
};

// On a parity chain the side mode is slaved to the level: k = kappa except on
// level 2, which sits one side photon higher.
inline int chain_k(int level, int kappa) { return level == 2 ? kappa + 1 : kappa; }

// Canonical order within one rung of n: level 1, then 3, then 2.
inline int level_rank(int level) { return level == 1 ? 0 : level == 3 ? 1 : 2; }

inline bool chain_order_less(const BasisState& a, const BasisState& b) {
  if (a.n != b.n) return a.n < b.n;
  return level_rank(a.level) < level_rank(b.level);
}

// One parity chain: the coupling-graph closure of a seed state, ordered by
// ascending n with level order 1, 3, 2 inside a rung.
template <class ScalarT = double>
struct ChainBasis {
  using Scalar = ScalarT;

  ModelParams<Scalar> params;
  std::vector<BasisState> states;
  Index initial_index = 0;  // position of the seed state
  int n_max = 0;

  Index size() const { return static_cast<Index>(states.size()); }
};

using ChainBasisd = ChainBasis<double>;

// Breadth-first closure of the seed under the nonzero couplings only: g1
// links |1,n,kappa> <-> |3,n+-1,kappa>, g2eff links |3,n,kappa> <->
// |2,n,kappa+1>.  With g1 = 0 the chain does not spread in n; with g2eff = 0
// no level-2 state is reachable.
template <class Scalar>
ChainBasis<Scalar> build_chain_basis(const ModelParams<Scalar>& params,
                                     const BasisState& seed, int n_max) {
  params.validate();
  if (seed.level < 1 || seed.level > 3)
    throw std::invalid_argument("build_chain_basis: seed level must be 1, 2 or 3");
  if (seed.n < 0)
    throw std::invalid_argument("build_chain_basis: seed n must be >= 0");
  if (n_max < seed.n)
    throw std::invalid_argument("build_chain_basis: n_max must be >= seed.n");
  if (seed.k != chain_k(seed.level, params.kappa))
    throw std::invalid_argument(
        "build_chain_basis: seed k must equal kappa (kappa + 1 on level 2)");

  const bool has_g1 = params.g1 != Scalar(0);
  const bool has_g2 = params.g2eff != Scalar(0);
  const int kap = params.kappa;

  std::set<BasisState> seen{seed};
  std::queue<BasisState> frontier;
  frontier.push(seed);
  const auto visit = [&](const BasisState& s) {
    if (seen.insert(s).second) frontier.push(s);
  };
  while (!frontier.empty()) {
    const BasisState s = frontier.front();
    frontier.pop();
    if (has_g1 && s.level != 2) {
      const int other = s.level == 1 ? 3 : 1;
      if (s.n + 1 <= n_max) visit({other, s.n + 1, kap});
      if (s.n - 1 >= 0) visit({other, s.n - 1, kap});
    }
    if (has_g2) {
      if (s.level == 3) visit({2, s.n, kap + 1});
      else if (s.level == 2) visit({3, s.n, kap});
    }
  }

  ChainBasis<Scalar> basis{params, {seen.begin(), seen.end()}, 0, n_max};
  std::sort(basis.states.begin(), basis.states.end(), chain_order_less);
  const auto it = std::find(basis.states.begin(), basis.states.end(), seed);
  basis.initial_index = it - basis.states.begin();
  return basis;
}

// Index of a state on the chain; absent (wrong parity, wrong k, or beyond the
// cutoff) is a value, not an error.
template <class Scalar>
std::optional<Index> locate(const ChainBasis<Scalar>& basis, const BasisState& state) {
  const auto it = std::lower_bound(basis.states.begin(), basis.states.end(),
                                   state, chain_order_less);
  if (it == basis.states.end() || *it != state) return std::nullopt;
  return it - basis.states.begin();
}

// Full product basis over both side-mode sheets k = kappa, kappa + 1.  It
// contains both parity chains (plus the sheets' leftover decoupled states)
// and serves as an independent oracle for the chain construction.
template <class ScalarT = double>
struct GridBasis {
  using Scalar = ScalarT;

  ModelParams<Scalar> params;
  std::vector<BasisState> states;  // n major, then level 1, 2, 3, then k
  int n_max = 0;

  Index size() const { return static_cast<Index>(states.size()); }
};

using GridBasisd = GridBasis<double>;

template <class Scalar>
GridBasis<Scalar> build_grid_basis(const ModelParams<Scalar>& params, int n_max) {
  params.validate();
  if (n_max < 0)
    throw std::invalid_argument("build_grid_basis: n_max must be >= 0");
  GridBasis<Scalar> basis{params, {}, n_max};
  basis.states.reserve(6 * (static_cast<std::size_t>(n_max) + 1));
  for (int n = 0; n <= n_max; ++n)
    for (int level = 1; level <= 3; ++level)
      for (int dk = 0; dk <= 1; ++dk)
        basis.states.push_back({level, n, params.kappa + dk});
  return basis;
}

template <class Scalar>
std::optional<Index> locate(const GridBasis<Scalar>& basis, const BasisState& state) {
  if (state.level < 1 || state.level > 3) return std::nullopt;
  if (state.n < 0 || state.n > basis.n_max) return std::nullopt;
  const int dk = state.k - basis.params.kappa;
  if (dk < 0 || dk > 1) return std::nullopt;
  return Index(6) * state.n + 2 * (state.level - 1) + dk;
}

}  // namespace mrjc
