#pragma once
// Mapping of the chain Hamiltonian onto an evanescently coupled waveguide
// array: gap spacings from the exponential coupling law J(d) = chi *
// exp(-alpha * d), side-guide geometry for the g2eff links, and the bend
// radius that realizes the omega1 site gradient.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrjc/hamiltonian.hpp"
#include "mrjc/model.hpp"
#include "mrjc/types.hpp"

namespace mrjc {

template <class ScalarT = double>
struct CouplingLaw {
  using Scalar = ScalarT;
  Scalar chi{};    // coupling at zero gap [1/propagation-length]
  Scalar alpha{};  // evanescent decay constant [1/transverse-length]

  void validate() const {
    if (!(chi > Scalar(0)))
      throw std::invalid_argument("CouplingLaw: chi must be > 0");
    if (!(alpha > Scalar(0)))
      throw std::invalid_argument("CouplingLaw: alpha must be > 0");
  }
};

using CouplingLawd = CouplingLaw<double>;

enum class LinkKind { chain, side };

template <class ScalarT = double>
struct CouplingLink {
  using Scalar = ScalarT;
  Index a = 0, b = 0;  // basis indices, a < b in chain order
  Scalar strength{};
  LinkKind kind = LinkKind::chain;
};

// Every nonzero coupling of the chain Hamiltonian, in chain order (sorted by
// the lower index; exactly the off-diagonal pattern of
// assemble_chain_hamiltonian).  Chain links carry g1 * sqrt(max(n, n')), side
// links carry g2eff and hang off the level-3 sites.
template <class Scalar>
std::vector<CouplingLink<Scalar>> coupling_sequence(const ModelParams<Scalar>& params,
                                                    const ChainBasis<Scalar>& basis) {
  if (!(params == basis.params))
    throw std::invalid_argument("coupling_sequence: basis was built from different params");
  if (basis.states.empty())
    throw std::invalid_argument("coupling_sequence: empty basis");
  using std::sqrt;
  std::vector<CouplingLink<Scalar>> links;
  for (Index i = 0; i < basis.size(); ++i) {
    const BasisState& s = basis.states[i];
    // per site the side partner (i + 1) precedes the chain partner (i + 2),
    // so the emission order is already sorted by (a, b)
    if (s.level == 3) {
      if (const auto j = locate(basis, BasisState{2, s.n, params.kappa + 1}))
        links.push_back({i, *j, params.g2eff, LinkKind::side});
    }
    if (s.level != 2) {
      const BasisState up{s.level == 1 ? 3 : 1, s.n + 1, params.kappa};
      if (const auto j = locate(basis, up))
        links.push_back({i, *j, params.g1 * sqrt(Scalar(s.n + 1)), LinkKind::chain});
    }
  }
  return links;
}

// d = ln(chi / J) / alpha, the gap realizing coupling J under the law.
template <class Scalar>
Scalar spacing_from_coupling(Scalar J, const CouplingLaw<Scalar>& law) {
  law.validate();
  if (!(J > Scalar(0)))
    throw std::invalid_argument("spacing_from_coupling: J must be > 0");
  if (!(J <= law.chi))
    throw std::invalid_argument("spacing_from_coupling: J exceeds the law maximum chi");
  using std::log;
  return log(law.chi / J) / law.alpha;
}

// R = 2*pi*n_s*a / (omega1_target * lambda): the bend radius whose index
// gradient produces the linear site energy ramp omega1.
template <class Scalar>
Scalar bend_radius(Scalar omega1_target, Scalar n_s, Scalar a, Scalar lambda) {
  if (!(omega1_target > Scalar(0)) || !(n_s > Scalar(0)) || !(a > Scalar(0)) ||
      !(lambda > Scalar(0)))
    throw std::invalid_argument("bend_radius: all inputs must be > 0");
  return Scalar(2) * std::numbers::pi_v<Scalar> * n_s * a / (omega1_target * lambda);
}

template <class ScalarT = double>
struct WaveguideOptics {
  using Scalar = ScalarT;
  Scalar n_s{};     // substrate refractive index
  Scalar a{};       // horizontal waveguide spacing
  Scalar lambda{};  // operating wavelength
};

using WaveguideOpticsd = WaveguideOptics<double>;

// A side guide attached to chain site `site` (a level-3 site).
template <class ScalarT = double>
struct CrossLink {
  using Scalar = ScalarT;
  Index site = 0;
  Scalar strength{};
  Scalar spacing{};
};

template <class ScalarT = double>
struct WaveguideLayout {
  using Scalar = ScalarT;
  std::vector<Scalar> spacings;  // one gap per chain link, in chain order
  std::vector<CrossLink<Scalar>> cross_links;
  std::vector<Scalar> site_offsets;  // diagonal energies, i.e. the required
                                     // per-site propagation-constant offsets
  Scalar bend_radius{};
  Scalar chi{}, alpha{};
  Scalar n_s{}, a{}, lambda{};
};

using WaveguideLayoutd = WaveguideLayout<double>;

// Full geometric translation of one chain.  Deterministic; fails (naming the
// offending link) if any coupling exceeds the law maximum chi.
template <class Scalar>
WaveguideLayout<Scalar> export_layout(const ModelParams<Scalar>& params,
                                      const ChainBasis<Scalar>& basis,
                                      const CouplingLaw<Scalar>& law,
                                      const WaveguideOptics<Scalar>& optics) {
  law.validate();
  const auto links = coupling_sequence(params, basis);
  WaveguideLayout<Scalar> layout;
  layout.chi = law.chi;
  layout.alpha = law.alpha;
  layout.n_s = optics.n_s;
  layout.a = optics.a;
  layout.lambda = optics.lambda;
  layout.bend_radius = bend_radius(params.omega1, optics.n_s, optics.a, optics.lambda);
  for (const auto& link : links) {
    Scalar d;
    try {
      d = spacing_from_coupling(link.strength, law);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("export_layout: link " + std::to_string(link.a) +
                                  "-" + std::to_string(link.b) + ": " + e.what());
    }
    if (link.kind == LinkKind::chain)
      layout.spacings.push_back(d);
    else
      layout.cross_links.push_back({link.a, link.strength, d});
  }
  layout.site_offsets.reserve(basis.states.size());
  for (const auto& s : basis.states)
    layout.site_offsets.push_back(bare_energy(params, s));
  return layout;
}

}  // namespace mrjc
