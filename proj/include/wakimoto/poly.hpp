#ifndef WAKIMOTO_POLY_HPP
#define WAKIMOTO_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "wakimoto/errors.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

// Dense univariate polynomial over Rat.  Invariant: no trailing zero
// coefficients; the zero polynomial has an empty coefficient vector and
// degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rat& v) { return Poly(std::vector<Rat>{v}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }

  Poly operator-(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }

  Poly operator*(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  // Leading coefficient 1.  Undefined for the zero polynomial.
  Poly monic() const {
    if (is_zero()) throw math_error("monic normalization of zero polynomial");
    return *this * Rat(Rat(1) / c_.back());
  }

  // Divides by (x - root).  Returns quotient and remainder value p(root).
  std::pair<Poly, Rat> deflate(const Rat& root) const {
    if (is_zero()) return {Poly(), Rat(0)};
    std::vector<Rat> q(c_.size() - 1, Rat(0));
    Rat carry = c_.back();
    for (size_t i = c_.size() - 1; i-- > 0;) {
      if (i < q.size()) q[i] = carry;
      carry = c_[i] + carry * root;
    }
    return {Poly(std::move(q)), carry};
  }

  // Multiplicity of `root` as a zero of this polynomial.
  int root_multiplicity(const Rat& root) const {
    int mult = 0;
    Poly p = *this;
    while (!p.is_zero()) {
      auto [q, rem] = p.deflate(root);
      if (rem != 0) break;
      ++mult;
      p = std::move(q);
    }
    return mult;
  }

  std::string str(const std::string& var = "j") const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += format_rat_pretty(c_[i]);
      if (i >= 1) out += "*" + var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// Unique polynomial of degree <= degree_bound through all samples (x, y).
// Newton's divided differences over Q; exact.  Errors: fewer than
// degree_bound+1 samples or duplicate abscissae (degenerate interpolation),
// or no polynomial of the requested degree passing through every sample.
inline Poly interpolate_poly(const std::vector<std::pair<Rat, Rat>>& samples,
                             int degree_bound) {
  if (degree_bound < 0) throw usage_error("negative interpolation bound");
  if (samples.size() < static_cast<size_t>(degree_bound) + 1)
    throw usage_error("degenerate interpolation: need at least " +
                      std::to_string(degree_bound + 1) + " samples, got " +
                      std::to_string(samples.size()));
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i].first == samples[j].first)
        throw usage_error("degenerate interpolation: duplicate sample point " +
                          format_rat(samples[i].first));

  // Divided-difference coefficients over the full sample set.
  std::vector<Rat> dd;
  dd.reserve(samples.size());
  for (const auto& s : samples) dd.push_back(s.second);
  for (size_t level = 1; level < samples.size(); ++level)
    for (size_t i = samples.size() - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) /
              (samples[i].first - samples[i - level].first);

  Poly result = Poly::constant(dd[0]);
  Poly basis = Poly::constant(Rat(1));
  for (size_t i = 1; i < samples.size(); ++i) {
    basis = basis * Poly({Rat(-samples[i - 1].first), Rat(1)});
    result = result + basis * dd[i];
  }
  if (result.degree() > degree_bound)
    throw math_error("interpolation: samples need degree " +
                     std::to_string(result.degree()) + " > bound " +
                     std::to_string(degree_bound));
  return result;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_POLY_HPP
