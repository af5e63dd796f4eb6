#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "wakimoto/linalg.hpp"

using namespace wakimoto;

TEST_CASE("row reduction, rank, and nullspace") {
  RatMatrix m = {{Rat(1), Rat(2), Rat(3)},
                 {Rat(2), Rat(4), Rat(6)},
                 {Rat(0), Rat(1), Rat(1)}};
  CHECK(rank(m) == 2);

  const auto ns = nullspace(m, 3);
  REQUIRE(ns.size() == 1);
  // The kernel vector must actually annihilate every row.
  for (const auto& row : m) {
    Rat dot = 0;
    for (size_t c = 0; c < 3; ++c) dot += row[c] * ns[0][c];
    CHECK(dot == 0);
  }

  RatMatrix full = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
  CHECK(rank(full) == 2);
  CHECK(nullspace(full, 2).empty());
}

TEST_CASE("exact determinants") {
  RatMatrix m = {{Rat(1, 2), Rat(0), Rat(1)},
                 {Rat(3), Rat(2, 5), Rat(0)},
                 {Rat(1), Rat(1), Rat(1)}};
  // Cofactor expansion by hand: 1/2 (2/5 - 0) - 0 + 1 (3 - 2/5).
  CHECK(determinant(m) == Rat(1, 2) * Rat(2, 5) + (Rat(3) - Rat(2, 5)));
  RatMatrix singular = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK(determinant(singular) == 0);
}

TEST_CASE("span insertion, membership, reduction") {
  Span s(3);
  CHECK(s.dim() == 0);
  CHECK(s.ambient_dim() == 3);
  CHECK(s.insert({Rat(1), Rat(1), Rat(0)}));
  CHECK(s.insert({Rat(0), Rat(0), Rat(2)}));
  CHECK_FALSE(s.insert({Rat(3), Rat(3), Rat(-5)}));  // combination of the two
  CHECK(s.dim() == 2);
  CHECK(s.contains({Rat(-1), Rat(-1), Rat(7)}));
  CHECK_FALSE(s.contains({Rat(1), Rat(0), Rat(0)}));

  const auto r = s.reduce({Rat(1), Rat(2), Rat(3)});
  bool nonzero = false;
  for (const auto& v : r) nonzero = nonzero || v != 0;
  CHECK(nonzero);
  CHECK(s.insert(r));
  CHECK(s.dim() == 3);
}

TEST_CASE("characteristic polynomial and rational roots") {
  RatMatrix m = {{Rat(2), Rat(1)}, {Rat(0), Rat(3)}};
  const Poly p = char_poly(m);  // (x-2)(x-3) = 6 - 5x + x^2
  CHECK(p == Poly({Rat(6), Rat(-5), Rat(1)}));

  auto roots = rational_roots(p);
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == std::pair(Rat(2), 1));
  CHECK(roots[1] == std::pair(Rat(3), 1));

  // Fractional eigenvalues are found exactly.
  RatMatrix f = {{Rat(1, 2), Rat(0)}, {Rat(5), Rat(-7, 3)}};
  auto fr = rational_roots(char_poly(f));
  std::sort(fr.begin(), fr.end());
  REQUIRE(fr.size() == 2);
  CHECK(fr[0].first == Rat(-7, 3));
  CHECK(fr[1].first == Rat(1, 2));

  // Repeated roots carry their multiplicity: (x + 1/2)^2 (x - 3).
  const Poly rep = Poly({Rat(1, 2), Rat(1)}) * Poly({Rat(1, 2), Rat(1)}) *
                   Poly({Rat(-3), Rat(1)});
  auto rr = rational_roots(rep);
  std::sort(rr.begin(), rr.end());
  REQUIRE(rr.size() == 2);
  CHECK(rr[0] == std::pair(Rat(-1, 2), 2));
  CHECK(rr[1] == std::pair(Rat(3), 1));
}
