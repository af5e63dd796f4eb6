#ifndef WAKIMOTO_BRST_HPP
#define WAKIMOTO_BRST_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wakimoto/currents.hpp"
#include "wakimoto/errors.hpp"
#include "wakimoto/fock.hpp"
#include "wakimoto/rational.hpp"
#include "wakimoto/series.hpp"
#include "wakimoto/structure.hpp"

namespace wakimoto {

enum class ModuleKind { fock, verma };

// Graded character q^{h(w)} sum_N dim_N q^N.  Fock and Verma coefficient
// sequences coincide (the product identity); only the pattern label differs.
inline CharacterSeries module_character(ModuleKind kind, const WeightLabel& w,
                                        long T) {
  CharacterSeries s =
      kind == ModuleKind::fock ? fock_pattern(T) : verma_pattern(T);
  s.offset = w.h;
  return s;
}

namespace detail {

// Shared truncation scan for label families A = base + 2tp at fixed b:
// h(Lambda_{A,b}) - h0 grows quadratically in t, so a finite window catches
// every term with offset <= T.  Callback receives (t, delta).
template <class F>
void scan_offsets(const ModuleParams& params, long base, const Rat& b,
                  const Rat& h0, long T, F&& f) {
  // For |t| beyond the window the offset exceeds T: the offset is a quadratic
  // in t with positive leading coefficient 2pp' and vertex at |t| bounded by
  // (|base| + (2m'+1))/2 with b = m' + 1/2; the linear slack below dominates.
  const long p = params.p();
  const long numer_b = static_cast<long>(rat_num(2 * b));  // 2m'+1
  const long window = T + std::abs(base) + numer_b + p + 5;
  for (long t = -window; t <= window; ++t) {
    const Rat j = params.label_j(Rat(base + 2 * t * p), b);
    const Rat off = params.grade(j) - h0;
    if (!is_integer(off))
      throw math_error("character offset is not an integer: " + format_rat(off));
    if (off < 0)
      throw math_error("negative character offset; base label is not minimal");
    const long delta = static_cast<long>(rat_num(off));
    if (delta <= T) f(t, delta);
  }
}

inline void require_degenerate_labels(const ModuleParams& params, long m,
                                      long mprime) {
  if (!params.has_labels())
    throw usage_error("character diagram needs labeled parameters (p, p')");
  if (m < 1 || m > params.p() - 1)
    throw usage_error("m out of the degenerate range 1..p-1");
  if (mprime < 0 || mprime > params.pprime() - 1)
    throw usage_error("m' out of the degenerate range 0..p'-1");
}

}  // namespace detail

// Signed weight diagram of the irreducible quotient: s_0 carries +, s_{±1}
// carry -, s_{±2} carry +, alternating outward.
struct SignedWeight {
  long index;  // n of s_n
  int sign;    // +1 or -1
  WeightLabel weight;
  long offset;  // h(s_n) - h(s_0), a nonnegative integer
};

// The diagram weights with offset <= T:
//   weight(s_{2i})     = Lambda_{m + 2ip,      m'+1/2}   (i in Z)
//   weight(s_{2i+1})   = Lambda_{-m - 2ip,     m'+1/2}   (i >= 0)
//   weight(s_{-(2i+1)}) = Lambda_{-m + 2(i+1)p, m'+1/2}   (i >= 0)
inline std::vector<SignedWeight> bgg_weight_list(const ModuleParams& params,
                                                 long m, long mprime, long T) {
  detail::require_degenerate_labels(params, m, mprime);
  const long p = params.p();
  const Rat b = Rat(mprime) + Rat(1, 2);
  const Rat h0 = params.grade(params.label_j(Rat(m), b));

  std::vector<SignedWeight> out;
  detail::scan_offsets(params, m, b, h0, T, [&](long t, long delta) {
    SignedWeight sw;
    sw.index = 2 * t;
    sw.sign = 1;
    sw.weight = weight_label(params, Rat(m + 2 * t * p), b);
    sw.offset = delta;
    out.push_back(sw);
  });
  detail::scan_offsets(params, -m, b, h0, T, [&](long t, long delta) {
    SignedWeight sw;
    // t >= 1 corresponds to s_{-(2t-1)}, t <= 0 to s_{1-2t}.
    sw.index = t >= 1 ? -(2 * t - 1) : (1 - 2 * t);
    sw.sign = -1;
    sw.weight = weight_label(params, Rat(-m + 2 * t * p), b);
    sw.offset = delta;
    out.push_back(sw);
  });
  std::sort(out.begin(), out.end(), [](const SignedWeight& a, const SignedWeight& b2) {
    return std::pair(a.offset, a.index) < std::pair(b2.offset, b2.index);
  });
  if (out.empty() || out.front().offset != 0 || out.front().index != 0)
    throw math_error("diagram does not start at s_0");
  return out;
}

// Alternating character sum over the diagram: ch L = sum sign(s_n) ch V(s_n),
// truncated to offsets <= T.  Coefficients must come out nonnegative.
inline CharacterSeries bgg_character(const ModuleParams& params, long m,
                                     long mprime, long T) {
  const auto list = bgg_weight_list(params, m, mprime, T);
  const auto verma = verma_pattern(T);
  CharacterSeries out;
  out.offset = list.front().weight.h;
  out.coeffs.assign(static_cast<size_t>(T) + 1, Rat(0));
  for (const auto& sw : list)
    for (size_t n = static_cast<size_t>(sw.offset); n <= static_cast<size_t>(T); ++n)
      out.coeffs[n] += Rat(sw.sign) * verma.coeffs[n - static_cast<size_t>(sw.offset)];
  for (const auto& c : out.coeffs)
    if (c < 0)
      throw math_error("irreducible character has a negative coefficient");
  return out;
}

// ---------------------------------------------------------------------------
// The two-sided Fock complex: position 2i holds F_{m-2ip, m'+1/2}, position
// 2i+1 holds F_{-m-2ip, m'+1/2}; maps alternate Q^m (even -> odd position)
// and Q^{p-m} (odd -> even), each shifting the first label by -2n.

struct ComplexDescriptor {
  ModuleParams params;
  long m = 0;
  long mprime = 0;

  static ComplexDescriptor make(const ModuleParams& params, long m, long mprime) {
    detail::require_degenerate_labels(params, m, mprime);
    return ComplexDescriptor{params, m, mprime};
  }

  Rat b() const { return Rat(mprime) + Rat(1, 2); }

  long first_label(long pos) const {
    const long p = params.p();
    if (pos % 2 == 0) return m - pos * p;  // pos = 2i -> m - 2ip
    // pos = 2i+1 -> -m - 2ip, where 2i = pos - 1
    return -m - (pos - 1) * p;
  }

  WeightLabel label(long pos) const {
    return weight_label(params, Rat(first_label(pos)), b());
  }

  // Charge n of the map Q^n out of position pos; labels drop by 2n.
  long map_charge(long pos) const {
    return pos % 2 == 0 ? m : params.p() - m;
  }
};

// Euler characteristic of the complex: sum over positions of
// (-1)^pos ch F(label(pos)), truncated to h-offsets <= T above position 0.
inline CharacterSeries euler_character(const ComplexDescriptor& desc, long T) {
  const Rat b = desc.b();
  const Rat h0 = desc.label(0).h;
  const auto fock = fock_pattern(T);

  // Positions split into the even family (labels m - 2ip) and the odd family
  // (labels -m - 2ip); both are arithmetic in the scan parameter.
  std::vector<std::pair<long, long>> terms;  // (position, offset)
  detail::scan_offsets(desc.params, desc.m, b, h0, T, [&](long t, long delta) {
    terms.push_back({-2 * t, delta});  // label m + 2tp sits at position -2t
  });
  detail::scan_offsets(desc.params, -desc.m, b, h0, T, [&](long t, long delta) {
    terms.push_back({-2 * t + 1, delta});  // label -m + 2tp at position -2t+1
  });
  std::sort(terms.begin(), terms.end());

  CharacterSeries out;
  out.offset = h0;
  out.coeffs.assign(static_cast<size_t>(T) + 1, Rat(0));
  for (const auto& [pos, off] : terms) {
    const Rat sign = (pos % 2 == 0) ? Rat(1) : Rat(-1);
    for (size_t n = static_cast<size_t>(off); n <= static_cast<size_t>(T); ++n)
      out.coeffs[n] += sign * fock.coeffs[n - static_cast<size_t>(off)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Screening charge cross-checks on one sector.

struct Q1Report {
  SectorLabel source;
  SectorLabel target;
  bool intertwines = true;
  size_t checked = 0;
  std::vector<std::string> failures;
  long vacuum_degree = 0;       // d-offset h(source) - h(target)
  bool vacuum_is_singular = false;
  bool vacuum_matches_kernel = false;
  Rat proportionality;          // Q1(vacuum) against the kernel eigenvector
  bool degree_preserving = true;
};

// Verifies that Q1 intertwines the action on all basis vectors of degree
// <= D against modes |n| <= D, that Q1(vacuum) is a singular vector matching
// the annihilator kernel of the target sector, and that Q1 preserves the
// d-eigenvalue (degree shifts uniformly by h(source) - h(target)).
inline Q1Report q1_checks(const SectorLabel& source, long D) {
  const Rat F = screening_offset(source);
  if (!is_odd_integer(F))
    throw math_error("Q1 not defined on this sector: offset " + format_rat(F) +
                     " is not an odd integer");
  Q1Report rep{source, SectorLabel{source.params, source.j - 2}};

  const Rat shift = source.grade() - rep.target.grade();
  if (!is_integer(shift) || shift < 0)
    throw math_error("Q1 degree shift is not a nonnegative integer: " +
                     format_rat(shift));
  rep.vacuum_degree = static_cast<long>(rat_num(shift));

  auto record = [&rep](bool ok, const std::string& what) {
    ++rep.checked;
    if (!ok) {
      rep.intertwines = false;
      if (rep.failures.size() < 32) rep.failures.push_back(what);
    }
  };

  for (long N = 0; N <= D; ++N) {
    for (const auto& mono : enumerate_basis(source, N)) {
      FockVector v(source);
      v.add_term(mono, Rat(1));
      const FockVector qv = screening_Q1(v);

      if (!qv.is_zero() && qv.homogeneous_degree() != N + rep.vacuum_degree)
        rep.degree_preserving = false;

      for (long n = -D; n <= D; ++n) {
        record(screening_Q1(act_x(n, v)) == act_x(n, qv),
               "[Q1, x_" + std::to_string(n) + "] on " + mono.str());
        record(screening_Q1(act_beta(n, v)) == act_beta(n, qv),
               "[Q1, beta_" + std::to_string(n) + "] on " + mono.str());
      }
    }
  }

  // Q1(vacuum) against the target-sector kernel at the shifted degree.
  const FockVector qnu = screening_Q1(vacuum(source));
  if (!qnu.is_zero()) {
    rep.vacuum_is_singular =
        act_x(1, qnu).is_zero() && act_beta(1, qnu).is_zero() &&
        act_x(0, qnu) == qnu * source.j;
    const auto ker = annihilator_kernel(rep.target, rep.vacuum_degree);
    for (const auto& space : ker.eigenspaces) {
      if (space.eigenvalue != source.j || space.vectors.size() != 1) continue;
      const auto& u = space.vectors[0];
      // Proportionality: compare on the first monomial of u.
      const auto& [mono, coeff] = *u.terms().begin();
      const Rat scale = qnu.coefficient_of(mono) / coeff;
      if (scale != 0 && qnu == u * scale) {
        rep.vacuum_matches_kernel = true;
        rep.proportionality = scale;
      }
    }
  }
  return rep;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_BRST_HPP
