#ifndef WAKIMOTO_CURRENTS_HPP
#define WAKIMOTO_CURRENTS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wakimoto/errors.hpp"
#include "wakimoto/fock.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

namespace detail {

// Enumerates partitions of d into parts of the given parity (1 = odd parts,
// 0 = even parts >= 2) as (part, multiplicity) lists, parts descending.
template <class F>
void partitions_rec(long d, long max_part, long parity,
                    std::vector<std::pair<long, long>>& acc, F&& f) {
  if (d == 0) {
    f(acc);
    return;
  }
  long p = std::min(d, max_part);
  if (p % 2 != parity) --p;
  for (; p >= 1 + (parity == 0 ? 1 : 0); p -= 2) {
    for (long e = 1; e * p <= d; ++e) {
      acc.push_back({p, e});
      partitions_rec(d - e * p, p - 2, parity, acc, f);
      acc.pop_back();
    }
  }
}

template <class F>
void for_each_partition(long d, long parity, F&& f) {
  if (d < 0) return;
  std::vector<std::pair<long, long>> acc;
  partitions_rec(d, d, parity, acc, f);
}

inline FockVector apply_family_pair(long n, const FockVector& v) {
  return apply_mode({0, n}, v) + apply_mode({2, n}, v);
}

inline Rat factorial(long n) {
  Rat f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// exp of the annihilation half of the x-current exponential applied to v:
// the piece at total z-exponent -d is a signed sum over partitions of d into
// odd parts of products of (phi_{0,m} + phi_{2,m})/(k m) contractions.
inline std::map<long, FockVector> x_exp_minus(const FockVector& v) {
  const Rat k = v.sector().k();
  std::map<long, FockVector> out;
  const long dmax = v.is_zero() ? 0 : v.max_degree();
  for (long d = 0; d <= dmax; ++d) {
    FockVector piece(v.sector());
    for_each_partition(d, 1, [&](const std::vector<std::pair<long, long>>& parts) {
      FockVector w = v;
      Rat factor = 1;
      for (const auto& [m, e] : parts) {
        for (long i = 0; i < e; ++i) w = apply_family_pair(m, w);
        Rat base = Rat(-1) / (k * m);
        for (long i = 0; i < e; ++i) factor *= base;
        factor /= factorial(e);
      }
      piece += w * factor;
    });
    if (!piece.is_zero()) out.emplace(-d, std::move(piece));
  }
  return out;
}

// Coefficient of z^delta in the creation half of the x-current exponential
// applied to u: sum over partitions of delta into odd parts of products of
// (phi_{0,-m} + phi_{2,-m})/(k m).
inline FockVector x_exp_plus_delta(const FockVector& u, long delta) {
  const Rat k = u.sector().k();
  if (delta == 0) return u;
  FockVector out(u.sector());
  for_each_partition(delta, 1, [&](const std::vector<std::pair<long, long>>& parts) {
    FockVector w = u;
    Rat factor = 1;
    for (const auto& [m, e] : parts) {
      for (long i = 0; i < e; ++i) w = apply_family_pair(-m, w);
      Rat base = Rat(1) / (k * m);
      for (long i = 0; i < e; ++i) factor *= base;
      factor /= factorial(e);
    }
    out += w * factor;
  });
  return out;
}

}  // namespace detail

// beta_n: odd modes act as phi_{0,n}/2; even modes (including n = 0) vanish
// identically in the principal gradation.
inline FockVector act_beta(long n, const FockVector& v) {
  if (n % 2 == 0) return FockVector(v.sector());
  return apply_mode({0, n}, v) * Rat(1, 2);
}

// x_n: coefficient of z^{-n} in the normal-ordered product
// (1/2) exp(E_+) P(z) exp(E_-), evaluated in three passes over maps keyed by
// accumulated z-exponent.  P carries phi_1 at even modes (its zero mode is
// the scalar 2j) and phi_2 at odd modes.  Only states whose exponent can
// still reach -n after the creation pass are kept.  The sigma-twisted action
// is the negative.
inline FockVector act_x(long n, const FockVector& v, bool twist = false) {
  const long t = -n;  // target z-exponent
  const Rat two_j = 2 * v.sector().j;

  std::map<long, FockVector> mid;
  for (const auto& [z, u] : detail::x_exp_minus(v)) {
    const long deg_u = u.is_zero() ? 0 : u.max_degree();
    for (long np = z - t; np <= deg_u; ++np) {
      FockVector piece(v.sector());
      if (np == 0) {
        piece = u * two_j;
      } else if (np % 2 != 0) {
        piece = apply_mode({2, np}, u);
      } else {
        piece = apply_mode({1, np}, u);
      }
      if (piece.is_zero()) continue;
      auto it = mid.find(z - np);
      if (it == mid.end())
        mid.emplace(z - np, std::move(piece));
      else
        it->second += piece;
    }
  }

  FockVector out(v.sector());
  for (const auto& [z, u] : mid) out += detail::x_exp_plus_delta(u, t - z);
  out *= Rat(1, 2);
  if (twist) out *= Rat(-1);
  return out;
}

// rho acts as -d: eigenvalue -(h(j) + N) on the degree-N slice of F_j.
inline FockVector act_rho(const FockVector& v) {
  const Rat h = v.sector().grade();
  FockVector out(v.sector());
  for (const auto& [m, c] : v.terms())
    out.add_term(m, c * -(h + m.degree()));
  return out;
}

// The central element acts as the level.
inline FockVector act_c(const FockVector& v) { return v * v.sector().k(); }

enum class Gen { beta, x, c, rho };

inline FockVector act_generator(Gen g, long n, const FockVector& v,
                                bool twist = false) {
  switch (g) {
    case Gen::beta: return act_beta(n, v);
    case Gen::x: return act_x(n, v, twist);
    case Gen::c: return act_c(v);
    case Gen::rho: return act_rho(v);
  }
  throw math_error("unknown generator");
}

// ---------------------------------------------------------------------------
// Screening charge.
//
// The screening current maps F_j to F_{j-2}.  Its mode expansion carries a
// sector-dependent exponent offset F = 2(1 - j)/(k + 2), so the coefficient
// at z^r exists only when r - F is an odd integer.  The operator at z^r is
//   (1/2) sum over even creation budgets Delta of
//     phi_{2,n} exp-plus(Delta) exp-minus(d),  n = F - r + Delta - d,
// where the exponentials carry phi_1 modes with charge 1/(k+2).

namespace detail {

inline std::map<long, FockVector> screen_exp_minus(const FockVector& v) {
  const Rat kp2 = v.sector().params.kplus2();
  std::map<long, FockVector> out;
  const long dmax = v.is_zero() ? 0 : v.max_degree();
  for (long d = 0; d <= dmax; d += 2) {
    FockVector piece(v.sector());
    for_each_partition(d, 0, [&](const std::vector<std::pair<long, long>>& parts) {
      FockVector w = v;
      Rat factor = 1;
      for (const auto& [m, e] : parts) {
        for (long i = 0; i < e; ++i) w = apply_mode({1, m}, w);
        Rat base = Rat(1) / (kp2 * m);
        for (long i = 0; i < e; ++i) factor *= base;
        factor /= factorial(e);
      }
      piece += w * factor;
    });
    if (!piece.is_zero()) out.emplace(-d, std::move(piece));
  }
  return out;
}

inline FockVector screen_exp_plus_delta(const FockVector& u, long delta) {
  const Rat kp2 = u.sector().params.kplus2();
  if (delta == 0) return u;
  FockVector out(u.sector());
  for_each_partition(delta, 0, [&](const std::vector<std::pair<long, long>>& parts) {
    FockVector w = u;
    Rat factor = 1;
    for (const auto& [m, e] : parts) {
      for (long i = 0; i < e; ++i) w = apply_mode({1, -m}, w);
      Rat base = Rat(-1) / (kp2 * m);
      for (long i = 0; i < e; ++i) factor *= base;
      factor /= factorial(e);
    }
    out += w * factor;
  });
  return out;
}

inline FockVector retag_sector(const FockVector& v, const SectorLabel& s) {
  FockVector out(s);
  for (const auto& [m, c] : v.terms()) out.add_term(m, c);
  return out;
}

}  // namespace detail

// Exponent offset of the screening current on sector j.
inline Rat screening_offset(const SectorLabel& s) {
  return 2 * (1 - s.j) / s.params.kplus2();
}

// Coefficient of z^r in the screening current applied to v; lands in F_{j-2}.
inline FockVector screening_coefficient(const Rat& r, const FockVector& v) {
  const SectorLabel& src = v.sector();
  const Rat F = screening_offset(src);
  const Rat diff = r - F;
  if (!is_odd_integer(diff))
    throw math_error("unreachable exponent: r - F = " + format_rat(diff) +
                     " is not an odd integer");
  const long rmf = static_cast<long>(rat_num(diff));  // r - F
  const SectorLabel dst{src.params, src.j - 2};

  FockVector out(dst);
  for (const auto& [z, u] : detail::screen_exp_minus(v)) {
    const long d = -z;
    const long deg_u = u.is_zero() ? 0 : u.max_degree();
    // n = (F - r) + Delta - d; annihilation needs n <= deg_u, creation any.
    const long delta_max = std::max(deg_u, long(-1)) + rmf + d;
    for (long delta = 0; delta <= delta_max; delta += 2) {
      const long n = -rmf + delta - d;
      FockVector w = apply_mode({2, n}, detail::screen_exp_plus_delta(u, delta));
      if (w.is_zero()) continue;
      out += detail::retag_sector(w, dst);
    }
  }
  return out * Rat(1, 2);
}

// The screening charge: the z^0 coefficient.  Defined only on sectors where
// the offset F is an odd integer.
inline FockVector screening_Q1(const FockVector& v) {
  return screening_coefficient(Rat(0), v);
}

// ---------------------------------------------------------------------------
// Relation verification.

struct RelationReport {
  bool pass = true;
  size_t checked = 0;
  std::vector<std::string> failures;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      pass = false;
      if (failures.size() < 32) failures.push_back(what);
    }
  }
};

// Checks every defining bracket on all monomial states of degree <= max_degree
// in F_j, with mode indices ranging over |m|, |n| <= max_mode:
//   [beta_m, beta_n] = m k delta_{m+n,0}          (m, n odd)
//   [beta_m, x_n]    = 2 x_{m+n}                  (m odd)
//   [x_m, x_n]       = -2 (-1)^m beta_{m+n} + m k (-1)^m delta_{m+n,0}
//   [rho, beta_n]    = n beta_n,   [rho, x_n] = n x_n
// with beta at even modes identically zero.
inline RelationReport verify_relations(const ModuleParams& params, const Rat& j,
                                       long max_degree, long max_mode) {
  const SectorLabel sector{params, j};
  const Rat k = params.k();
  RelationReport rep;

  std::vector<FockVector> states;
  for (long N = 0; N <= max_degree; ++N)
    for (const auto& mono : enumerate_basis(sector, N)) {
      FockVector v(sector);
      v.add_term(mono, Rat(1));
      states.push_back(std::move(v));
    }

  auto tag = [&](const std::string& rel, long m, long n, const FockVector& v) {
    return rel + " at m=" + std::to_string(m) + " n=" + std::to_string(n) +
           " on " + v.terms().begin()->first.str();
  };

  for (const auto& v : states) {
    // beta vanishes at even modes.
    for (long n = -max_mode; n <= max_mode; n += 1)
      if (n % 2 == 0)
        rep.record(act_beta(n, v).is_zero(),
                   "beta_even = 0 at n=" + std::to_string(n));

    for (long m = -max_mode; m <= max_mode; ++m) {
      const bool m_odd = (m % 2) != 0;
      for (long n = -max_mode; n <= max_mode; ++n) {
        const bool n_odd = (n % 2) != 0;

        if (m_odd && n_odd) {
          FockVector lhs = act_beta(m, act_beta(n, v)) - act_beta(n, act_beta(m, v));
          FockVector rhs(sector);
          if (m + n == 0) rhs = v * (Rat(m) * k);
          rep.record(lhs == rhs, tag("[beta,beta]", m, n, v));
        }

        if (m_odd) {
          FockVector lhs = act_beta(m, act_x(n, v)) - act_x(n, act_beta(m, v));
          FockVector rhs = act_x(m + n, v) * Rat(2);
          rep.record(lhs == rhs, tag("[beta,x]", m, n, v));
        }

        {
          FockVector lhs = act_x(m, act_x(n, v)) - act_x(n, act_x(m, v));
          const Rat sgn = (m % 2 == 0) ? Rat(1) : Rat(-1);
          FockVector rhs = act_beta(m + n, v) * (Rat(-2) * sgn);
          if (m + n == 0) rhs += v * (Rat(m) * k * sgn);
          rep.record(lhs == rhs, tag("[x,x]", m, n, v));
        }
      }

      // rho relations need only one mode index.
      {
        FockVector lhs = act_rho(act_beta(m, v)) - act_beta(m, act_rho(v));
        rep.record(lhs == act_beta(m, v) * Rat(m), tag("[rho,beta]", m, 0, v));
        FockVector lhs2 = act_rho(act_x(m, v)) - act_x(m, act_rho(v));
        rep.record(lhs2 == act_x(m, v) * Rat(m), tag("[rho,x]", m, 0, v));
      }
    }
  }
  return rep;
}

// Checks that the sector vacuum is a highest weight vector of weight
// (j, h(j), k): positive modes kill it, x_0 scales by j, rho by -h.
inline RelationReport verify_highest_weight(const ModuleParams& params,
                                            const Rat& j, long max_mode) {
  const SectorLabel sector{params, j};
  RelationReport rep;
  const FockVector nu = vacuum(sector);

  for (long n = 1; n <= max_mode; ++n) {
    rep.record(act_x(n, nu).is_zero(), "x_" + std::to_string(n) + " vacuum");
    rep.record(act_beta(n, nu).is_zero(), "beta_" + std::to_string(n) + " vacuum");
  }
  rep.record(act_x(0, nu) == nu * j, "x_0 vacuum eigenvalue");
  rep.record(act_c(nu) == nu * params.k(), "central charge");
  rep.record(act_rho(nu) == nu * -sector.grade(), "rho vacuum eigenvalue");
  return rep;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_CURRENTS_HPP
