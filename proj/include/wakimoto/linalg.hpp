#ifndef WAKIMOTO_LINALG_HPP
#define WAKIMOTO_LINALG_HPP

#include <utility>
#include <vector>

#include "wakimoto/errors.hpp"
#include "wakimoto/poly.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

using RatRow = std::vector<Rat>;
using RatMatrix = std::vector<RatRow>;  // row-major, rectangular

// In-place reduced row echelon form.  Returns the pivot column indices in
// order.  Exact rational Gauss-Jordan; pivot = first nonzero entry in the
// column scan, no magnitude heuristics needed over Q.
inline std::vector<size_t> rref(RatMatrix& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const Rat inv = Rat(1) / m[r][c];
    for (size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t rank(RatMatrix m) { return rref(m).size(); }

// Basis of {v : M v = 0}.  Canonical: one vector per free column, with a 1 in
// that free column; deterministic given the matrix.
inline std::vector<RatRow> nullspace(RatMatrix m, size_t cols) {
  if (!m.empty() && m[0].size() != cols)
    throw usage_error("nullspace: column count mismatch");
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<RatRow> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatRow v(cols, Rat(0));
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Determinant of a square matrix; exact Gaussian elimination tracking pivots.
inline Rat determinant(RatMatrix m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw usage_error("determinant: matrix not square");
  Rat det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && m[sel][c] == 0) ++sel;
    if (sel == n) return Rat(0);
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const Rat inv = Rat(1) / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rat f = m[i][c] * inv;
      for (size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

// Incremental row-space builder in reduced echelon form.  insert() returns
// whether the vector enlarged the span; contains() tests membership; both are
// exact.  reduce() returns the residual of v against the current span.
class Span {
 public:
  explicit Span(size_t dim) : dim_(dim) {}

  size_t dim() const { return rows_.size(); }
  size_t ambient_dim() const { return dim_; }
  const std::vector<RatRow>& rows() const { return rows_; }

  RatRow reduce(RatRow v) const {
    if (v.size() != dim_) throw usage_error("span: dimension mismatch");
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat& f = v[lead_[i]];
      if (f == 0) continue;
      const Rat factor = f;  // rows are normalized to leading 1
      for (size_t k = 0; k < dim_; ++k) v[k] -= factor * rows_[i][k];
    }
    return v;
  }

  bool contains(const RatRow& v) const {
    RatRow r = reduce(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

  bool insert(RatRow v) {
    v = reduce(std::move(v));
    size_t lead = dim_;
    for (size_t k = 0; k < dim_; ++k)
      if (v[k] != 0) {
        lead = k;
        break;
      }
    if (lead == dim_) return false;
    const Rat inv = Rat(1) / v[lead];
    for (auto& x : v) x *= inv;
    // Back-substitute into existing rows to keep the reduced form.
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat f = rows_[i][lead];
      if (f == 0) continue;
      for (size_t k = 0; k < dim_; ++k) rows_[i][k] -= f * v[k];
    }
    // Keep rows ordered by leading index.
    size_t pos = 0;
    while (pos < lead_.size() && lead_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    lead_.insert(lead_.begin() + static_cast<long>(pos), lead);
    return true;
  }

 private:
  size_t dim_;
  std::vector<RatRow> rows_;
  std::vector<size_t> lead_;
};

// Characteristic polynomial det(x I - M) of a small square matrix, by
// interpolation at x = 0..n (exact; n+1 samples determine degree n).
inline Poly char_poly(const RatMatrix& m) {
  const size_t n = m.size();
  std::vector<std::pair<Rat, Rat>> samples;
  for (size_t s = 0; s <= n; ++s) {
    RatMatrix a(n, RatRow(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        a[i][j] = (i == j ? Rat(static_cast<long>(s)) - m[i][j] : -m[i][j]);
    samples.emplace_back(Rat(static_cast<long>(s)), determinant(std::move(a)));
  }
  return interpolate_poly(samples, static_cast<int>(n));
}

namespace detail {

inline std::vector<Int> divisors(Int v, size_t cap = 1u << 16) {
  if (v < 0) v = -v;
  std::vector<Int> out;
  if (v == 0) return out;
  for (Int d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
      if (out.size() > cap) throw math_error("divisor enumeration overflow");
    }
  }
  return out;
}

}  // namespace detail

// All rational roots of p with multiplicities, via the rational root theorem
// on the denominator-cleared polynomial.  Exact and complete over Q.
inline std::vector<std::pair<Rat, int>> rational_roots(const Poly& p) {
  std::vector<std::pair<Rat, int>> out;
  if (p.is_zero()) throw usage_error("rational_roots of zero polynomial");
  Poly q = p;
  int zero_mult = q.root_multiplicity(Rat(0));
  if (zero_mult > 0) {
    out.emplace_back(Rat(0), zero_mult);
    for (int i = 0; i < zero_mult; ++i) q = q.deflate(Rat(0)).first;
  }
  if (q.degree() < 1) return out;
  Int denl(1);
  for (const auto& c : q.coeffs()) {
    Int d = rat_den(c);
    denl = denl / gcd(denl, d) * d;
  }
  Int a0 = rat_num(q.coeff(0) * denl);
  Int an = rat_num(q.coeff(static_cast<size_t>(q.degree())) * denl);
  for (const Int& num : detail::divisors(a0))
    for (const Int& den : detail::divisors(an))
      for (int sign : {1, -1}) {
        Rat cand = Rat(sign * num, den);
        int mult = q.root_multiplicity(cand);
        if (mult > 0) {
          out.emplace_back(cand, mult);
          for (int i = 0; i < mult; ++i) q = q.deflate(cand).first;
        }
      }
  return out;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_LINALG_HPP
