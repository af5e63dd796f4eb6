#include <catch2/catch_amalgamated.hpp>

#include "wakimoto/errors.hpp"
#include "wakimoto/fock.hpp"
#include "wakimoto/series.hpp"

using namespace wakimoto;

TEST_CASE("parameter construction and label arithmetic") {
  const auto generic = ModuleParams::generic(Rat(7, 5));
  CHECK(generic.k() == Rat(7, 5));
  CHECK(generic.kplus2() == Rat(17, 5));
  CHECK_FALSE(generic.has_labels());

  const auto labeled = ModuleParams::labeled(3, 1);
  CHECK(labeled.k() == Rat(1));
  CHECK(labeled.has_labels());
  CHECK(labeled.p() == 3);
  CHECK(labeled.pprime() == 1);
  // j_{m,m'} = m - m'(k+2) with the half-integer second label.
  CHECK(labeled.label_j(Rat(2), Rat(1, 2)) == Rat(1, 2));
  CHECK(labeled.label_j(Rat(4), Rat(1, 2)) == Rat(5, 2));

  CHECK_THROWS_AS(ModuleParams::generic(Rat(0)), usage_error);
  CHECK_THROWS_AS(ModuleParams::generic(Rat(-2)), usage_error);
  CHECK_THROWS_AS(ModuleParams::labeled(4, 2), usage_error);   // gcd > 1
  CHECK_THROWS_AS(ModuleParams::labeled(0, 1), usage_error);
  CHECK_THROWS_AS(ModuleParams::labeled(-3, 1), usage_error);
}

TEST_CASE("conformal weights") {
  const auto params = ModuleParams::labeled(3, 1);  // k = 1
  // h = (2j^2 + k) / (4(k+2)).
  CHECK(params.grade(Rat(1, 2)) == Rat(1, 8));
  CHECK(params.grade(Rat(5, 2)) == Rat(9, 8));
  CHECK(params.grade(Rat(0)) == Rat(1, 12));
  const SectorLabel sector{params, Rat(5, 2)};
  CHECK(sector.grade() == Rat(9, 8));
  CHECK(sector.k() == Rat(1));
}

TEST_CASE("mode legality per family") {
  CHECK_NOTHROW(check_mode(ModeIndex{0, -3}));
  CHECK_NOTHROW(check_mode(ModeIndex{2, 5}));
  CHECK_NOTHROW(check_mode(ModeIndex{1, -4}));
  CHECK_THROWS_AS(check_mode(ModeIndex{0, 2}), math_error);   // family 0 is odd
  CHECK_THROWS_AS(check_mode(ModeIndex{2, 0}), math_error);
  CHECK_THROWS_AS(check_mode(ModeIndex{1, 3}), math_error);   // family 1 is even
  CHECK_THROWS_AS(check_mode(ModeIndex{1, 0}), math_error);   // zero mode excluded
  CHECK_THROWS_AS(check_mode(ModeIndex{3, 1}), math_error);   // no such family
}

TEST_CASE("commutation scalars per family") {
  const auto params = ModuleParams::generic(Rat(1, 3));
  // [phi_{f,m}, phi_{f,-m}] = bracket(f, m).
  CHECK(mode_bracket(params, 0, 3) == Rat(4));          // 4 k n = 4*(1/3)*3
  CHECK(mode_bracket(params, 1, 2) == Rat(56, 3));      // 4 (k+2) n
  CHECK(mode_bracket(params, 2, 1) == Rat(-4, 3));      // -4 k n
  CHECK(mode_bracket(params, 0, -3) == -mode_bracket(params, 0, 3));
}

TEST_CASE("monomials normalize to a canonical factor order") {
  FockMonomial m;
  m = m.with_mode(2, -1);
  m = m.with_mode(0, -3);
  m = m.with_mode(2, -1);
  m = m.with_mode(1, -2);
  CHECK(m.degree() == 7);
  CHECK(m.factor_count() == 4);
  CHECK(m.exponent_of(2, -1) == 2);
  CHECK(m.exponent_of(0, -3) == 1);
  CHECK(m.exponent_of(0, -1) == 0);
  CHECK(m.str() == "phi0(-3) phi1(-2) phi2(-1)^2");

  const auto removed = m.without_mode(2, -1);
  REQUIRE(removed.has_value());
  CHECK(removed->exponent_of(2, -1) == 1);
  CHECK_FALSE(m.without_mode(0, -5).has_value());
}

TEST_CASE("graded dimensions match the product series") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  const auto pattern = fock_pattern(10);
  for (long N = 0; N <= 10; ++N)
    CHECK(Rat(static_cast<long>(enumerate_basis(sector, N).size())) ==
          pattern.coeff(N));
}

TEST_CASE("mode application: creation, annihilation, zero mode") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  const FockVector nu = vacuum(sector);

  // Creation inserts a factor.
  const FockVector v = apply_mode(ModeIndex{2, -1}, nu);
  REQUIRE(v.terms().size() == 1);
  CHECK(v.homogeneous_degree() == 1);

  // Annihilation of the vacuum is zero.
  CHECK(apply_mode(ModeIndex{0, 1}, nu).is_zero());
  CHECK(apply_mode(ModeIndex{2, 3}, nu).is_zero());

  // [phi_{2,1}, phi_{2,-1}] = -4k on the vacuum.
  const FockVector w = apply_mode(ModeIndex{2, 1}, v);
  CHECK(w == nu * Rat(-4));

  // Exponent rule: phi_{2,1} (phi_{2,-1}^2 nu) = 2 * (-4k) phi_{2,-1} nu.
  const FockVector v2 = apply_mode(ModeIndex{2, -1}, v);
  CHECK(apply_mode(ModeIndex{2, 1}, v2) == v * Rat(-8));

  // The even-family zero mode acts as the scalar 2j.
  CHECK(apply_phi1_zero(nu) == nu * Rat(1));
  const SectorLabel other{params, Rat(5, 2)};
  CHECK(apply_phi1_zero(vacuum(other)) == vacuum(other) * Rat(5));
}

TEST_CASE("vector arithmetic prunes zeros and tracks degrees") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  FockVector a = vacuum(sector);
  FockVector b = vacuum(sector);
  b *= Rat(-1);
  a += b;
  CHECK(a.is_zero());

  FockVector c = apply_mode(ModeIndex{0, -1}, vacuum(sector));
  c += apply_mode(ModeIndex{2, -1}, vacuum(sector)) * Rat(3);
  CHECK(c.terms().size() == 2);
  CHECK(c.homogeneous_degree() == 1);
  CHECK(c.max_degree() == 1);
  const auto at1 = c.component(1);
  CHECK(at1 == c);
  CHECK(c.component(0).is_zero());
}

TEST_CASE("coordinates against an enumerated basis") {
  const auto params = ModuleParams::labeled(3, 1);
  const SectorLabel sector{params, Rat(1, 2)};
  const auto basis = enumerate_basis(sector, 2);
  REQUIRE(basis.size() == 4);

  FockVector v(sector);
  v.add_term(basis[1], Rat(2, 3));
  v.add_term(basis[3], Rat(-5));
  const auto coords = coordinates(v, basis);
  REQUIRE(coords.size() == 4);
  CHECK(coords[0] == 0);
  CHECK(coords[1] == Rat(2, 3));
  CHECK(coords[3] == Rat(-5));

  // A vector outside the spanning list is rejected.
  const auto deg1 = enumerate_basis(sector, 1);
  FockVector w(sector);
  w.add_term(deg1[0], Rat(1));
  CHECK_THROWS_AS(coordinates(w, basis), math_error);
}
