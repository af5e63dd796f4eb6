#ifndef WAKIMOTO_FOCK_HPP
#define WAKIMOTO_FOCK_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wakimoto/errors.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

// Coupling data for one run: either a generic level k or a labeled pair
// (p, p') of coprime positive integers with k + 2 = p/p'.  k = 0 and k = -2
// are excluded everywhere (the realization divides by k and by k + 2).
class ModuleParams {
 public:
  static ModuleParams generic(const Rat& k) {
    check_k(k);
    ModuleParams m;
    m.k_ = k;
    return m;
  }

  static ModuleParams labeled(long p, long pprime) {
    if (p < 1 || pprime < 1)
      throw usage_error("labels p, p' must be positive");
    if (boost::multiprecision::gcd(Int(p), Int(pprime)) != 1)
      throw usage_error("labels p, p' must be coprime");
    ModuleParams m;
    m.k_ = Rat(p, pprime) - 2;
    check_k(m.k_);
    m.pq_ = {p, pprime};
    return m;
  }

  const Rat& k() const { return k_; }
  Rat kplus2() const { return k_ + 2; }
  bool has_labels() const { return pq_.has_value(); }
  long p() const { return require_labels().first; }
  long pprime() const { return require_labels().second; }

  // j_{m,m'} = m - m' (k+2); the label map for sectors and weights.
  Rat label_j(const Rat& m, const Rat& mprime) const {
    return m - mprime * kplus2();
  }

  // Grade of the highest weight vector of F_j: h = (2 j^2 + k) / (4 (k+2)).
  Rat grade(const Rat& j) const { return (2 * j * j + k_) / (4 * kplus2()); }

  bool operator==(const ModuleParams& o) const {
    return k_ == o.k_ && pq_ == o.pq_;
  }
  bool operator!=(const ModuleParams& o) const { return !(*this == o); }

 private:
  static void check_k(const Rat& k) {
    if (k == 0 || k == -2)
      throw usage_error("level k must differ from 0 and -2");
  }
  const std::pair<long, long>& require_labels() const {
    if (!pq_) throw usage_error("params carry no (p, p') labels");
    return *pq_;
  }

  Rat k_{0};
  std::optional<std::pair<long, long>> pq_;
};

// One Fock space F_j at fixed params.
struct SectorLabel {
  ModuleParams params;
  Rat j;

  Rat k() const { return params.k(); }
  Rat grade() const { return params.grade(j); }

  bool operator==(const SectorLabel& o) const {
    return params == o.params && j == o.j;
  }
  bool operator!=(const SectorLabel& o) const { return !(*this == o); }
};

// A weight (m, m') with rational entries, plus the derived label j and grade
// h.  Generic weights use (m, m') = (j, 0), consistent with j_{j,0} = j.
struct WeightLabel {
  Rat m;
  Rat mprime;
  Rat j;
  Rat h;

  bool operator==(const WeightLabel& o) const {
    return m == o.m && mprime == o.mprime && j == o.j && h == o.h;
  }
};

inline WeightLabel weight_label(const ModuleParams& params, const Rat& m,
                                const Rat& mprime) {
  Rat j = params.label_j(m, mprime);
  return WeightLabel{m, mprime, j, params.grade(j)};
}

inline WeightLabel weight_of_j(const ModuleParams& params, const Rat& j) {
  return WeightLabel{j, Rat(0), j, params.grade(j)};
}

// One oscillator mode phi_{family, n}.  Families 0 and 2 carry odd modes
// only; family 1 carries even nonzero modes (its zero mode acts as the
// scalar 2j and is never stored).  n < 0 creates, n > 0 annihilates.
struct ModeIndex {
  int family;
  long n;

  bool operator==(const ModeIndex& o) const {
    return family == o.family && n == o.n;
  }
};

inline void check_mode(const ModeIndex& m) {
  const bool odd = (m.n % 2) != 0;
  if (m.family == 0 || m.family == 2) {
    if (!odd)
      throw math_error("illegal mode: family " + std::to_string(m.family) +
                       " has odd modes only, got n = " + std::to_string(m.n));
  } else if (m.family == 1) {
    if (odd || m.n == 0)
      throw math_error("illegal mode: family 1 has even nonzero modes only, "
                       "got n = " + std::to_string(m.n));
  } else {
    throw math_error("illegal mode: family must be 0, 1 or 2");
  }
}

// [phi_{f,n}, phi_{f,-n}] for n > 0: family 0 -> 4kn, family 1 -> 4(k+2)n,
// family 2 -> -4kn.  All other oscillator pairs commute.
inline Rat mode_bracket(const ModuleParams& params, int family, long n) {
  switch (family) {
    case 0: return Rat(4 * n) * params.k();
    case 1: return Rat(4 * n) * params.kplus2();
    case 2: return Rat(-4 * n) * params.k();
    default: throw math_error("illegal mode family");
  }
}

// A creation mode raised to a power; building block of FockMonomial.
struct ModePower {
  int family;
  long n;  // n < 0
  long exp;

  bool operator==(const ModePower& o) const {
    return family == o.family && n == o.n && exp == o.exp;
  }
};

// Product of creation modes applied to the sector vacuum, in canonical order:
// factors sorted by family ascending, then by n ascending.  Creation modes
// commute, so the sorted form is a normal form.  Zero modes are never stored.
class FockMonomial {
 public:
  FockMonomial() = default;

  const std::vector<ModePower>& factors() const { return f_; }

  long degree() const {
    long d = 0;
    for (const auto& p : f_) d += -p.n * p.exp;
    return d;
  }

  long factor_count() const {
    long c = 0;
    for (const auto& p : f_) c += p.exp;
    return c;
  }

  long exponent_of(int family, long n) const {
    for (const auto& p : f_)
      if (p.family == family && p.n == n) return p.exp;
    return 0;
  }

  // Returns this monomial with one more phi_{family,n} factor (n < 0).
  FockMonomial with_mode(int family, long n) const {
    check_mode({family, n});
    if (n >= 0) throw math_error("with_mode requires a creation mode (n < 0)");
    FockMonomial out = *this;
    auto it = std::find_if(out.f_.begin(), out.f_.end(), [&](const ModePower& p) {
      return p.family == family && p.n == n;
    });
    if (it != out.f_.end()) {
      ++it->exp;
    } else {
      auto pos = std::find_if(out.f_.begin(), out.f_.end(),
                              [&](const ModePower& p) {
                                return std::pair(p.family, p.n) >
                                       std::pair(family, n);
                              });
      out.f_.insert(pos, ModePower{family, n, 1});
    }
    return out;
  }

  // Returns this monomial with the exponent of phi_{family,n} lowered by one,
  // or nullopt if the mode is absent.
  std::optional<FockMonomial> without_mode(int family, long n) const {
    FockMonomial out = *this;
    auto it = std::find_if(out.f_.begin(), out.f_.end(), [&](const ModePower& p) {
      return p.family == family && p.n == n;
    });
    if (it == out.f_.end()) return std::nullopt;
    if (--it->exp == 0) out.f_.erase(it);
    return out;
  }

  bool operator==(const FockMonomial& o) const { return f_ == o.f_; }
  bool operator!=(const FockMonomial& o) const { return f_ != o.f_; }

  std::string str() const {
    if (f_.empty()) return "1";
    std::string out;
    for (const auto& p : f_) {
      if (!out.empty()) out += " ";
      out += "phi" + std::to_string(p.family) + "(" + std::to_string(p.n) + ")";
      if (p.exp > 1) out += "^" + std::to_string(p.exp);
    }
    return out;
  }

 private:
  std::vector<ModePower> f_;
};

// Canonical monomial order: fewer factors first, then lexicographic on the
// expanded factor sequence (family, n) pairs.  This is the enumeration order
// of bases and the term order of printed vectors.
struct MonomialLess {
  bool operator()(const FockMonomial& a, const FockMonomial& b) const {
    if (a.factor_count() != b.factor_count())
      return a.factor_count() < b.factor_count();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    size_t ia = 0, ib = 0;
    long ra = 0, rb = 0;  // consumed repetitions within current ModePower
    while (ia < fa.size() && ib < fb.size()) {
      auto ka = std::pair(fa[ia].family, fa[ia].n);
      auto kb = std::pair(fb[ib].family, fb[ib].n);
      if (ka != kb) return ka < kb;
      long take = std::min(fa[ia].exp - ra, fb[ib].exp - rb);
      ra += take;
      rb += take;
      if (ra == fa[ia].exp) { ++ia; ra = 0; }
      if (rb == fb[ib].exp) { ++ib; rb = 0; }
    }
    return ia == fa.size() && ib != fb.size();
  }
};

// Exact vector in one sector: finite sum of monomials applied to the vacuum.
// Zero coefficients are never stored.
class FockVector {
 public:
  explicit FockVector(SectorLabel sector) : sector_(std::move(sector)) {}

  const SectorLabel& sector() const { return sector_; }
  const std::map<FockMonomial, Rat, MonomialLess>& terms() const {
    return terms_;
  }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  Rat coefficient_of(const FockMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const FockMonomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FockVector& operator+=(const FockVector& o) {
    require_same_sector(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  FockVector& operator-=(const FockVector& o) {
    require_same_sector(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  FockVector& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend FockVector operator+(FockVector a, const FockVector& b) {
    a += b;
    return a;
  }
  friend FockVector operator-(FockVector a, const FockVector& b) {
    a -= b;
    return a;
  }
  friend FockVector operator*(FockVector a, const Rat& s) {
    a *= s;
    return a;
  }

  bool operator==(const FockVector& o) const {
    return sector_ == o.sector_ && terms_ == o.terms_;
  }
  bool operator!=(const FockVector& o) const { return !(*this == o); }

  // Degree of a homogeneous vector; error when mixed or zero.
  long homogeneous_degree() const {
    if (terms_.empty())
      throw math_error("homogeneous_degree of the zero vector");
    long d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) throw math_error("vector is not homogeneous");
    return d;
  }

  long max_degree() const {
    long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  // Component of exact degree N.
  FockVector component(long N) const {
    FockVector out(sector_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == N) out.add_term(m, c);
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + format_rat_pretty(c) + ") " + m.str();
    }
    return out;
  }

 private:
  void require_same_sector(const FockVector& o) const {
    if (sector_ != o.sector_)
      throw math_error("sector mismatch in vector arithmetic");
  }

  SectorLabel sector_;
  std::map<FockMonomial, Rat, MonomialLess> terms_;
};

inline FockVector vacuum(const SectorLabel& sector) {
  FockVector v(sector);
  v.add_term(FockMonomial{}, Rat(1));
  return v;
}

// Oscillator action.  n < 0 multiplies by the creation mode; n > 0 commutes
// through and contracts: phi_{f,n} (phi_{f,-n})^e ... = e [phi_{f,n},
// phi_{f,-n}] (phi_{f,-n})^{e-1} ... since the bracket is central and every
// positive mode kills the vacuum.
inline FockVector apply_mode(const ModeIndex& mode, const FockVector& v) {
  check_mode(mode);
  FockVector out(v.sector());
  if (mode.n < 0) {
    for (const auto& [m, c] : v.terms())
      out.add_term(m.with_mode(mode.family, mode.n), c);
    return out;
  }
  const Rat bracket = mode_bracket(v.sector().params, mode.family, mode.n);
  for (const auto& [m, c] : v.terms()) {
    const long e = m.exponent_of(mode.family, -mode.n);
    if (e == 0) continue;
    out.add_term(*m.without_mode(mode.family, -mode.n), c * Rat(e) * bracket);
  }
  return out;
}

// Zero mode of family 1: scalar 2j on sector j.
inline FockVector apply_phi1_zero(const FockVector& v) {
  return v * (2 * v.sector().j);
}

// All monomials of degree exactly N, in canonical order.  The count matches
// the coefficient of x^N in prod_a 1/((1-x^{2a})(1-x^{2a-1})^2).
inline std::vector<FockMonomial> enumerate_basis(const SectorLabel& sector,
                                                 long N) {
  (void)sector;  // the basis shape is sector-independent
  if (N < 0) throw usage_error("enumerate_basis: negative degree");
  // Modes listed with their weights; recursion assigns exponents.
  std::vector<std::pair<int, long>> modes;  // (family, n)
  for (long w = 1; w <= N; ++w) {
    if (w % 2 == 1) {
      modes.push_back({0, -w});
      modes.push_back({2, -w});
    } else {
      modes.push_back({1, -w});
    }
  }
  std::vector<FockMonomial> out;
  std::vector<long> exps(modes.size(), 0);
  auto rec = [&](auto&& self, size_t idx, long remaining) -> void {
    if (remaining == 0) {
      FockMonomial m;
      for (size_t i = 0; i < modes.size(); ++i)
        for (long r = 0; r < exps[i]; ++r)
          m = m.with_mode(modes[i].first, modes[i].second);
      out.push_back(std::move(m));
      return;
    }
    if (idx == modes.size()) return;
    const long w = -modes[idx].second;
    for (long e = 0; e * w <= remaining; ++e) {
      exps[idx] = e;
      self(self, idx + 1, remaining - e * w);
    }
    exps[idx] = 0;
  };
  rec(rec, 0, N);
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

// Coordinates of a homogeneous vector in the canonical basis of its degree.
inline std::vector<Rat> coordinates(const FockVector& v,
                                    const std::vector<FockMonomial>& basis) {
  std::vector<Rat> out(basis.size(), Rat(0));
  std::map<FockMonomial, size_t, MonomialLess> index;
  for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  for (const auto& [m, c] : v.terms()) {
    auto it = index.find(m);
    if (it == index.end())
      throw math_error("coordinates: monomial outside the given basis");
    out[it->second] = c;
  }
  return out;
}

// Per-degree term counts of a vector.
inline std::map<long, size_t> inspect(const FockVector& v) {
  std::map<long, size_t> hist;
  for (const auto& [m, c] : v.terms()) ++hist[m.degree()];
  return hist;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_FOCK_HPP
