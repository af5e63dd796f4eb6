#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "wakimoto/errors.hpp"
#include "wakimoto/series.hpp"

using namespace wakimoto;

namespace {

// Independent oracle: number of partitions of n with parts <= cap drawn from
// a set (all sizes, or odd sizes only), by the classic two-variable recursion.
long count_partitions(long n, long cap, bool odd_only) {
  if (n == 0) return 1;
  if (n < 0 || cap == 0) return 0;
  if (odd_only && cap % 2 == 0) return count_partitions(n, cap - 1, odd_only);
  return count_partitions(n - cap, cap, odd_only) +
         count_partitions(n, cap - 1, odd_only);
}

// Pairs (lambda, mu) with |lambda| + |mu| = n, mu into odd parts.
long bicolored(long n) {
  long total = 0;
  for (long a = 0; a <= n; ++a)
    total += count_partitions(a, a, false) * count_partitions(n - a, n - a, true);
  return total;
}

}  // namespace

TEST_CASE("product expansions match the partition-count oracle") {
  const long T = 14;
  const auto verma = verma_pattern(T);
  REQUIRE(verma.order() == T);
  for (long n = 0; n <= T; ++n)
    CHECK(verma.coeff(n) == Rat(bicolored(n)));
}

TEST_CASE("Fock and Verma patterns agree coefficientwise") {
  const long T = 20;
  const auto fock = fock_pattern(T);
  const auto verma = verma_pattern(T);
  REQUIRE(fock.offset == 0);
  REQUIRE(verma.offset == 0);
  for (long n = 0; n <= T; ++n) CHECK(fock.coeff(n) == verma.coeff(n));
  const std::vector<long> head = {1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232};
  for (size_t n = 0; n < head.size(); ++n)
    CHECK(fock.coeff(static_cast<long>(n)) == Rat(head[n]));
}

TEST_CASE("general product factors including negative multiplicity") {
  // A factor with negative multiplicity divides: 1/(1-x) times (1-x) is 1.
  // Steps larger than the order keep each progression to its first exponent.
  const auto s = product_series({{1, 1000, 1}, {1, 1000, -1}}, 8);
  for (long n = 0; n <= 8; ++n) CHECK(s.coeff(n) == Rat(n == 0 ? 1 : 0));

  // Partitions into parts == 2 mod 3: 1/((1-x^2)(1-x^5)(1-x^8)...).
  const auto t = product_series({{2, 3, 1}}, 10);
  CHECK(t.coeff(7) == 1);   // 5+2
  CHECK(t.coeff(10) == 3);  // 8+2, 5+5, 2+2+2+2+2
}

TEST_CASE("coefficient access beyond the order is an error, never zero") {
  const auto s = fock_pattern(5);
  CHECK_THROWS_AS(s.coeff(6), usage_error);
  CHECK_THROWS_AS(s.coeff(-1), usage_error);
  auto t = s;
  t.truncate(3);
  CHECK(t.order() == 3);
  CHECK_THROWS_AS(t.coeff(4), usage_error);
}

TEST_CASE("series comparison aligns integer-separated offsets") {
  CharacterSeries a(Rat(1, 8), {Rat(1), Rat(2), Rat(4)});
  CharacterSeries b(Rat(9, 8), {Rat(2), Rat(4)});  // a shifted by one step
  auto cmp = series_compare(a, b);
  CHECK(cmp.equal);

  CharacterSeries c(Rat(9, 8), {Rat(2), Rat(5)});
  cmp = series_compare(a, c);
  CHECK_FALSE(cmp.equal);
  REQUIRE(cmp.mismatch_degree.has_value());
  CHECK(*cmp.mismatch_degree == Rat(17, 8));
  CHECK(cmp.lhs_value == Rat(4));
  CHECK(cmp.rhs_value == Rat(5));

  // Offsets separated by a non-integer cannot be compared at all.
  CharacterSeries d(Rat(1, 3), {Rat(1)});
  CHECK_THROWS_AS(series_compare(a, d), math_error);
}
