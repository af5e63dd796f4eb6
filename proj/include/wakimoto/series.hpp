#ifndef WAKIMOTO_SERIES_HPP
#define WAKIMOTO_SERIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "wakimoto/errors.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

// Truncated q-series q^offset * (c[0] + c[1] q + ... + c[T] q^T) with a
// rational leading offset.  Coefficients are exact; the series is *defined*
// only through absolute exponent offset + order(); nothing is assumed beyond.
struct CharacterSeries {
  Rat offset;
  std::vector<Rat> coeffs;  // coeffs.size() == order + 1

  CharacterSeries() : offset(0) {}
  CharacterSeries(Rat off, std::vector<Rat> c)
      : offset(std::move(off)), coeffs(std::move(c)) {}

  long order() const { return static_cast<long>(coeffs.size()) - 1; }

  Rat coeff(long rel_degree) const {
    if (rel_degree < 0 || rel_degree > order())
      throw usage_error("series coefficient out of defined range");
    return coeffs[static_cast<size_t>(rel_degree)];
  }

  void truncate(long new_order) {
    if (new_order < order())
      coeffs.resize(static_cast<size_t>(new_order) + 1);
  }

  CharacterSeries operator*(const Rat& s) const {
    CharacterSeries r = *this;
    for (auto& v : r.coeffs) v *= s;
    return r;
  }
};

namespace detail {

// c *= 1/(1 - x^e), truncated at c.size()-1.
inline void mul_inv_one_minus(std::vector<Rat>& c, long e) {
  for (size_t i = static_cast<size_t>(e); i < c.size(); ++i)
    c[i] += c[i - static_cast<size_t>(e)];
}

// c *= (1 - x^e), truncated.
inline void mul_one_minus(std::vector<Rat>& c, long e) {
  for (size_t i = c.size(); i-- > static_cast<size_t>(e);)
    c[i] -= c[i - static_cast<size_t>(e)];
}

}  // namespace detail

// One factor family of an infinite product: exponents first, first+step,
// first+2*step, ...  mult > 0 contributes 1/(1-x^e)^mult per exponent,
// mult < 0 contributes (1-x^e)^|mult|.
struct Progression {
  long first = 1;
  long step = 1;
  long mult = 1;
};

// Expands the product of the given progressions to order T (offset 0).
// An empty list yields the constant series 1.
inline CharacterSeries product_series(const std::vector<Progression>& factors,
                                      long T) {
  if (T < 0) throw usage_error("negative series order");
  std::vector<Rat> c(static_cast<size_t>(T) + 1, Rat(0));
  c[0] = 1;
  for (const auto& f : factors) {
    if (f.first < 1 || f.step < 1)
      throw usage_error("product_series: exponent progression must have "
                        "first >= 1 and step >= 1");
    if (f.mult == 0) throw usage_error("product_series: zero multiplicity");
    for (long e = f.first; e <= T; e += f.step)
      for (long r = 0; r < (f.mult > 0 ? f.mult : -f.mult); ++r)
        f.mult > 0 ? detail::mul_inv_one_minus(c, e)
                   : detail::mul_one_minus(c, e);
  }
  return CharacterSeries(Rat(0), std::move(c));
}

// Graded dimension pattern of one Fock space (offset excluded):
// prod_a 1/((1-q^{2a}) (1-q^{2a-1})^2).
inline CharacterSeries fock_pattern(long T) {
  return product_series({{2, 2, 1}, {1, 2, 2}}, T);
}

// Graded dimension pattern of one Verma module (offset excluded):
// prod_a 1/((1-q^a) (1-q^{2a-1})).  Coefficient-wise equal to fock_pattern.
inline CharacterSeries verma_pattern(long T) {
  return product_series({{1, 1, 1}, {1, 2, 1}}, T);
}

struct SeriesComparison {
  bool equal = true;
  // Set when equal is false: lowest absolute degree where the two disagree,
  // expressed relative to the common base offset, plus both values.
  std::optional<Rat> mismatch_degree;
  Rat lhs_value{0};
  Rat rhs_value{0};
  // Inclusive length of the compared window (number of compared coefficients).
  long compared = 0;
};

// Compares two series over the overlap of their defined ranges.  The offsets
// must differ by an integer; otherwise the gradings are incommensurate and no
// coefficient ever aligns.
inline SeriesComparison series_compare(const CharacterSeries& a,
                                       const CharacterSeries& b) {
  Rat diff = b.offset - a.offset;
  if (!is_integer(diff))
    throw math_error("incommensurate gradings: offsets differ by " +
                     format_rat(diff));
  long shift = static_cast<long>(rat_num(diff));  // b starts at a-rel `shift`
  long lo = std::max(0L, shift);
  long hi = std::min(a.order(), shift + b.order());
  SeriesComparison out;
  for (long d = lo; d <= hi; ++d) {
    ++out.compared;
    const Rat& va = a.coeffs[static_cast<size_t>(d)];
    const Rat& vb = b.coeffs[static_cast<size_t>(d - shift)];
    if (va != vb) {
      out.equal = false;
      out.mismatch_degree = a.offset + d;
      out.lhs_value = va;
      out.rhs_value = vb;
      return out;
    }
  }
  return out;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_SERIES_HPP
