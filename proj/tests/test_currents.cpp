#include <catch2/catch_amalgamated.hpp>

#include "wakimoto/currents.hpp"
#include "wakimoto/errors.hpp"
#include "wakimoto/fock.hpp"

using namespace wakimoto;

namespace {

FockVector mono(const SectorLabel& sector, std::initializer_list<ModeIndex> modes,
                const Rat& coeff = Rat(1)) {
  FockMonomial m;
  for (const auto& mi : modes) m = m.with_mode(mi.family, mi.n);
  FockVector v(sector);
  v.add_term(m, coeff);
  return v;
}

}  // namespace

TEST_CASE("raising current on the vacuum, frozen values") {
  const auto params = ModuleParams::labeled(3, 1);  // k = 1
  const SectorLabel sector{params, Rat(1, 2)};
  const FockVector nu = vacuum(sector);
  const Rat j = sector.j;

  // x_0 nu = j nu.
  CHECK(act_x(0, nu) == nu * j);

  // x_{-1} nu = (j/k) phi0(-1) nu + (j/k + 1/2) phi2(-1) nu.
  FockVector expected = mono(sector, {ModeIndex{0, -1}}, j);
  expected += mono(sector, {ModeIndex{2, -1}}, j + Rat(1, 2));
  CHECK(act_x(-1, nu) == expected);

  // x_1 x_{-1} nu = [x_1, x_{-1}] nu = (2 beta_0 - c) nu = -k nu.
  CHECK(act_x(1, act_x(-1, nu)) == nu * Rat(-1));

  // beta_1 beta_{-1} nu = k nu.
  CHECK(act_beta(1, act_beta(-1, nu)) == nu * Rat(1));

  // Single-factor annihilations, frozen from the mode expansion:
  // x_1 (phi2(-1) nu) = (4j - 2k) nu, x_1 (phi0(-1) nu) = -4j nu.
  CHECK(act_x(1, mono(sector, {ModeIndex{2, -1}})) == nu * (4 * j - 2));
  CHECK(act_x(1, mono(sector, {ModeIndex{0, -1}})) == nu * (-4 * j));

  // x_0 respects the grading off the top: x_0 (phi2(-1) nu) = (j+2) phi2(-1) nu.
  CHECK(act_x(0, mono(sector, {ModeIndex{2, -1}})) ==
        mono(sector, {ModeIndex{2, -1}}, j + 2));
}

TEST_CASE("even modes of the odd-family current vanish") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  const FockVector nu = vacuum(sector);
  CHECK(act_beta(0, nu).is_zero());
  CHECK(act_beta(2, nu).is_zero());
  CHECK(act_beta(-2, mono(sector, {ModeIndex{1, -2}})).is_zero());
  CHECK(act_beta(-1, nu) == mono(sector, {ModeIndex{0, -1}}, Rat(1, 2)));
}

TEST_CASE("grading operator acts by minus the conformal weight") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  const Rat h = sector.grade();
  CHECK(act_rho(vacuum(sector)) == vacuum(sector) * (-h));
  const auto v = mono(sector, {ModeIndex{2, -1}, ModeIndex{1, -2}});
  CHECK(act_rho(v) == v * (-(h + 3)));
  CHECK(act_c(v) == v * params.k());
}

TEST_CASE("sign twist negates the raising current only") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  const auto v = mono(sector, {ModeIndex{0, -1}});
  CHECK(act_x(-1, v, true) == act_x(-1, v) * Rat(-1));
  CHECK(act_x(2, act_x(-2, v, true), true) == act_x(2, act_x(-2, v)));
}

TEST_CASE("defining relations hold on a small grid") {
  for (const Rat& k : {Rat(1), Rat(7, 5)}) {
    const auto params = ModuleParams::generic(k);
    for (const Rat& j : {Rat(0), Rat(2)}) {
      const auto rep = verify_relations(params, j, 2, 2);
      INFO("k = " << format_rat(k) << ", j = " << format_rat(j));
      for (const auto& f : rep.failures) INFO(f);
      CHECK(rep.pass);
      CHECK(rep.checked > 0);
    }
  }
}

TEST_CASE("highest-weight conditions on the vacuum") {
  const auto params = ModuleParams::generic(Rat(1, 3));
  const auto rep = verify_highest_weight(params, Rat(1, 2), 5);
  for (const auto& f : rep.failures) INFO(f);
  CHECK(rep.pass);
}

TEST_CASE("screening charge, frozen values at k = 1") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel source{params, Rat(5, 2)};  // F = 2(1-j)/(k+2) = -1

  CHECK(screening_offset(source) == Rat(-1));

  const FockVector image = screening_Q1(vacuum(source));
  const SectorLabel target{params, Rat(1, 2)};
  CHECK(image == mono(target, {ModeIndex{2, -1}}, Rat(1, 2)));

  // Q1 (phi2(-1) nu) = 1/2 phi2(-1)^2 nu + 1/3 phi1(-2) nu.
  FockVector expect = mono(target, {ModeIndex{2, -1}, ModeIndex{2, -1}}, Rat(1, 2));
  expect += mono(target, {ModeIndex{1, -2}}, Rat(1, 3));
  CHECK(screening_Q1(mono(source, {ModeIndex{2, -1}})) == expect);

  // The image sector sits two units lower.
  CHECK(image.sector().j == source.j - 2);
}

TEST_CASE("screening is undefined off the odd-integer offset lattice") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel bad{params, Rat(0)};  // F = 2/3
  CHECK_THROWS_AS(screening_Q1(vacuum(bad)), math_error);
  CHECK_THROWS_WITH(screening_Q1(vacuum(bad)),
                    Catch::Matchers::ContainsSubstring("unreachable exponent"));
}

TEST_CASE("screening intertwines the action, spot checks") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel source{params, Rat(5, 2)};
  const FockVector nu = vacuum(source);
  for (long n = -2; n <= 2; ++n) {
    CHECK(screening_Q1(act_x(n, nu)) == act_x(n, screening_Q1(nu)));
    CHECK(screening_Q1(act_beta(n, nu)) == act_beta(n, screening_Q1(nu)));
  }
  const auto v = mono(source, {ModeIndex{0, -1}});
  for (long n : {-1L, 1L}) {
    CHECK(screening_Q1(act_x(n, v)) == act_x(n, screening_Q1(v)));
  }
}
