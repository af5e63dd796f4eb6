#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "wakimoto/brst.hpp"
#include "wakimoto/errors.hpp"
#include "wakimoto/structure.hpp"

using namespace wakimoto;

TEST_CASE("module characters carry the conformal weight offset") {
  const auto params = ModuleParams::labeled(3, 1);
  const auto w = weight_label(params, Rat(2), Rat(1, 2));  // j = 1/2
  const auto fock = module_character(ModuleKind::fock, w, 6);
  CHECK(fock.offset == Rat(1, 8));
  CHECK(fock.coeffs == std::vector<Rat>{1, 2, 4, 8, 14, 24, 40});
  const auto verma = module_character(ModuleKind::verma, w, 6);
  CHECK(verma.offset == fock.offset);
  CHECK(verma.coeffs == fock.coeffs);
}

TEST_CASE("signed weight diagram, frozen for (3,1), m=2, m'=0") {
  const auto params = ModuleParams::labeled(3, 1);
  const auto list = bgg_weight_list(params, 2, 0, 10);
  REQUIRE(list.size() == 5);

  CHECK(list[0].index == 0);
  CHECK(list[0].sign == 1);
  CHECK(list[0].weight.j == Rat(1, 2));
  CHECK(list[0].offset == 0);

  CHECK(list[1].index == -1);
  CHECK(list[1].sign == -1);
  CHECK(list[1].weight.j == Rat(5, 2));
  CHECK(list[1].offset == 1);

  CHECK(list[2].index == 1);
  CHECK(list[2].sign == -1);
  CHECK(list[2].weight.j == Rat(-7, 2));
  CHECK(list[2].offset == 2);

  CHECK(list[3].index == -2);
  CHECK(list[3].sign == 1);
  CHECK(list[3].weight.j == Rat(-11, 2));
  CHECK(list[3].offset == 5);

  CHECK(list[4].index == 2);
  CHECK(list[4].sign == 1);
  CHECK(list[4].weight.j == Rat(13, 2));
  CHECK(list[4].offset == 7);
}

TEST_CASE("alternating character sum, frozen coefficients") {
  const auto params = ModuleParams::labeled(3, 1);
  const auto ch = bgg_character(params, 2, 0, 8);
  CHECK(ch.offset == Rat(1, 8));
  CHECK(ch.coeffs == std::vector<Rat>{1, 1, 1, 2, 2, 3, 4, 5, 6});

  CHECK_THROWS_AS(bgg_character(params, 0, 0, 4), usage_error);
  CHECK_THROWS_AS(bgg_character(params, 3, 0, 4), usage_error);
  CHECK_THROWS_AS(bgg_character(params, 1, 1, 4), usage_error);
  CHECK_THROWS_AS(
      bgg_character(ModuleParams::generic(Rat(1)), 1, 0, 4), usage_error);
}

TEST_CASE("two-sided complex positions and map charges") {
  const auto params = ModuleParams::labeled(3, 1);
  const auto desc = ComplexDescriptor::make(params, 2, 0);

  CHECK(desc.first_label(0) == 2);
  CHECK(desc.first_label(1) == -2);
  CHECK(desc.first_label(-1) == 4);
  CHECK(desc.first_label(2) == -4);
  CHECK(desc.first_label(-2) == 8);
  CHECK(desc.label(0).j == Rat(1, 2));
  CHECK(desc.label(-1).j == Rat(5, 2));
  CHECK(desc.label(1).j == Rat(-7, 2));

  // Maps alternate charge m out of even positions, p - m out of odd ones,
  // and each map drops the first label by twice its charge.
  for (long pos = -3; pos <= 3; ++pos) {
    const long charge = desc.map_charge(pos);
    CHECK(charge == (pos % 2 == 0 ? 2 : 1));
    CHECK(desc.first_label(pos) - desc.first_label(pos + 1) == 2 * charge);
  }
}

TEST_CASE("Euler characteristic equals the alternating sum to high order") {
  const std::vector<std::tuple<long, long, long, long>> cases = {
      {3, 1, 1, 0}, {3, 1, 2, 0}, {5, 2, 2, 1}};
  for (const auto& [p, pp, m, mp] : cases) {
    const auto params = ModuleParams::labeled(p, pp);
    const auto desc = ComplexDescriptor::make(params, m, mp);
    const auto euler = euler_character(desc, 20);
    const auto bgg = bgg_character(params, m, mp, 20);
    const auto cmp = series_compare(euler, bgg);
    INFO("(p,p',m,m') = (" << p << "," << pp << "," << m << "," << mp << ")");
    CHECK(cmp.equal);
    CHECK(cmp.compared == 21);
  }
}

TEST_CASE("irreducible character matches the quotient dimensions") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  const long maxN = 4;

  const auto k1 = annihilator_kernel(sector, 1);
  REQUIRE(k1.eigenspaces.size() == 1);
  const FockVector u1 = k1.eigenspaces[0].vectors[0];

  const auto full = submodule_closure(sector, {vacuum(sector)}, maxN);
  const auto sub = submodule_closure(sector, {u1}, maxN);
  const auto ch = bgg_character(params, 2, 0, maxN);
  for (long d = 0; d <= maxN; ++d)
    CHECK(Rat(full.dim(d) - sub.dim(d)) == ch.coeff(d));
}

TEST_CASE("screening charge checks on the labeled source sector") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel source{params, Rat(5, 2)};
  const auto rep = q1_checks(source, 3);

  CHECK(rep.source.j == Rat(5, 2));
  CHECK(rep.target.j == Rat(1, 2));
  CHECK(rep.intertwines);
  for (const auto& f : rep.failures) INFO(f);
  CHECK(rep.checked == 210);
  CHECK(rep.vacuum_degree == 1);
  CHECK(rep.vacuum_is_singular);
  CHECK(rep.vacuum_matches_kernel);
  CHECK(rep.proportionality == Rat(1, 2));
  CHECK(rep.degree_preserving);

  // Sectors without the odd-integer offset admit no screening charge.
  const SectorLabel bad{params, Rat(0)};
  CHECK_THROWS_AS(q1_checks(bad, 1), math_error);
}
