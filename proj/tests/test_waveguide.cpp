#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "mrjc/hamiltonian.hpp"
#include "mrjc/model.hpp"
#include "mrjc/waveguide.hpp"

using namespace mrjc;

namespace {

constexpr double pi = std::numbers::pi;

ModelParamsd fig3_params() { return ModelParamsd::from_levels(90, 0, 100, 1.5, 10); }

}  // namespace

TEST_CASE("coupling law validation") {
  CHECK_NOTHROW((CouplingLawd{2.0, 0.5}.validate()));
  CHECK_THROWS_AS((CouplingLawd{0.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((CouplingLawd{2.0, -1.0}.validate()), std::invalid_argument);
}

TEST_CASE("coupling sequence mirrors the chain off-diagonals") {
  const auto params = fig3_params();
  const auto basis = build_chain_basis(params, {1, 0, 0}, 4);
  const auto H = assemble_chain_hamiltonian(params, basis);
  const auto links = coupling_sequence(params, basis);
  REQUIRE(links.size() == 6);
  // (a, b, strength, kind) in chain order
  CHECK(links[0].a == 0);
  CHECK(links[0].b == 1);
  CHECK(links[0].strength == 1.5);
  CHECK(links[0].kind == LinkKind::chain);
  CHECK(links[1].a == 1);
  CHECK(links[1].b == 2);
  CHECK(links[1].strength == 10.0);
  CHECK(links[1].kind == LinkKind::side);
  CHECK(links[2].a == 1);
  CHECK(links[2].b == 3);
  CHECK(links[2].strength == 1.5 * std::sqrt(2.0));
  CHECK(links[5].a == 4);
  CHECK(links[5].b == 6);
  CHECK(links[5].strength == 1.5 * std::sqrt(4.0));
  int above_diagonal = 0;
  for (Index i = 0; i < H.rows(); ++i)
    for (Index j = i + 1; j < H.cols(); ++j)
      if (H(i, j) != 0) ++above_diagonal;
  CHECK(int(links.size()) == above_diagonal);
  for (const auto& link : links) {
    CHECK(link.a < link.b);
    CHECK(H(link.a, link.b) == link.strength);
  }
  for (std::size_t i = 1; i < links.size(); ++i) {
    CHECK(links[i - 1].a <= links[i].a);
    if (links[i - 1].a == links[i].a) CHECK(links[i - 1].b < links[i].b);
  }
  // params mismatch rejected
  const auto other = ModelParamsd::from_levels(90, 0, 100, 1.5, 12);
  CHECK_THROWS_AS(coupling_sequence(other, basis), std::invalid_argument);
}

TEST_CASE("spacing from coupling inverts the exponential law") {
  const CouplingLawd law{2.0, 0.5};
  SUBCASE("zero gap at the law maximum") {
    CHECK(spacing_from_coupling(2.0, law) == 0.0);
  }
  SUBCASE("one decay length") {
    CHECK(spacing_from_coupling(2.0 * std::exp(-0.5), law) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("round trip across the fig3 sequence") {
    const auto params = fig3_params();
    const auto basis = build_chain_basis(params, {1, 0, 0}, 32);
    const CouplingLawd wide{12.0, 1.7};
    for (const auto& link : coupling_sequence(params, basis)) {
      const double d = spacing_from_coupling(link.strength, wide);
      CHECK(d > 0.0);
      const double J = wide.chi * std::exp(-wide.alpha * d);
      CHECK(J == doctest::Approx(link.strength).epsilon(1e-12));
    }
  }
  SUBCASE("domain violations") {
    CHECK_THROWS_AS(spacing_from_coupling(1.5, CouplingLawd{1.0, 1.0}),
                    std::invalid_argument);  // exceeds the law maximum
    CHECK_THROWS_AS(spacing_from_coupling(0.0, law), std::invalid_argument);
    CHECK_THROWS_AS(spacing_from_coupling(-1.0, law), std::invalid_argument);
  }
}

TEST_CASE("bend radius inverts the frequency formula") {
  SUBCASE("unit combination") {
    // n_s * a / lambda = 1 and omega1 = 2*pi give R = 1
    CHECK(bend_radius(2 * pi, 2.0, 3.0, 6.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("halving lambda doubles R") {
    const double r1 = bend_radius(1.0, 1.5, 2.0, 0.8);
    const double r2 = bend_radius(1.0, 1.5, 2.0, 0.4);
    CHECK(r2 == doctest::Approx(2 * r1).epsilon(1e-15));
  }
  SUBCASE("round trip to 1e-12") {
    const double omega1 = 1.0, n_s = 2.3, a = 1.1, lambda = 0.63;
    const double R = bend_radius(omega1, n_s, a, lambda);
    const double back = 2 * pi * n_s * a / (R * lambda);
    CHECK(back == doctest::Approx(omega1).epsilon(1e-12));
  }
  SUBCASE("non-positive inputs rejected") {
    CHECK_THROWS_AS(bend_radius(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bend_radius(1.0, -1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bend_radius(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bend_radius(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("export_layout assembles the full geometry") {
  const auto params = fig3_params();
  const auto basis = build_chain_basis(params, {1, 0, 0}, 6);
  const auto H = assemble_chain_hamiltonian(params, basis);
  const CouplingLawd law{12.0, 1.7};
  const WaveguideOpticsd optics{2.3, 1.1, 0.63};
  const auto layout = export_layout(params, basis, law, optics);

  const auto links = coupling_sequence(params, basis);
  std::size_t chain_links = 0, side_links = 0;
  for (const auto& link : links)
    (link.kind == LinkKind::chain ? chain_links : side_links)++;
  CHECK(layout.spacings.size() == chain_links);
  CHECK(layout.cross_links.size() == side_links);
  // side guides hang off the level-3 sites
  for (const auto& cross : layout.cross_links) {
    CHECK(basis.states[cross.site].level == 3);
    CHECK(cross.strength == params.g2eff);
    CHECK(law.chi * std::exp(-law.alpha * cross.spacing) ==
          doctest::Approx(params.g2eff).epsilon(1e-12));
  }
  // spacings decrease as the ladder coupling grows
  for (std::size_t i = 1; i < layout.spacings.size(); ++i)
    CHECK(layout.spacings[i] < layout.spacings[i - 1]);
  // site offsets are the diagonal energies, bit for bit
  REQUIRE(Index(layout.site_offsets.size()) == basis.size());
  for (Index i = 0; i < basis.size(); ++i)
    CHECK(layout.site_offsets[i] == H(i, i));
  CHECK(layout.bend_radius ==
        bend_radius(params.omega1, optics.n_s, optics.a, optics.lambda));
  CHECK(layout.chi == law.chi);
  CHECK(layout.alpha == law.alpha);
  CHECK(layout.n_s == optics.n_s);
  CHECK(layout.a == optics.a);
  CHECK(layout.lambda == optics.lambda);
}

TEST_CASE("export_layout names the offending link") {
  const auto params = fig3_params();
  const auto basis = build_chain_basis(params, {1, 0, 0}, 4);
  // chi = 5 admits every g1 link here but not the g2eff = 10 side links;
  // the first side link on the chain is 1-2
  try {
    export_layout(params, basis, CouplingLawd{5.0, 1.0}, WaveguideOpticsd{1, 1, 1});
    FAIL("expected std::invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("link 1-2") != std::string::npos);
  }
}
