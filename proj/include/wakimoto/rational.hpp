#ifndef WAKIMOTO_RATIONAL_HPP
#define WAKIMOTO_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "wakimoto/errors.hpp"

namespace wakimoto {

// Exact rational scalar.  cpp_rational keeps every value normalized: lowest
// terms, denominator > 0, zero is 0/1.  All engine arithmetic is exact; no
// floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// True when r is an odd integer.
inline bool is_odd_integer(const Rat& r) {
  return is_integer(r) && rat_num(r) % 2 != 0;
}

// Canonical serialization: always "numerator/denominator".
inline std::string format_rat(const Rat& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Human-facing form: "n" for integers, "n/d" otherwise.
inline std::string format_rat_pretty(const Rat& r) {
  if (is_integer(r)) return rat_num(r).str();
  return format_rat(r);
}

// Parses "n" or "n/d" (optional leading '-').  Rejects everything else.
inline Rat parse_rat(const std::string& text) {
  auto fail = [&]() -> Rat {
    throw usage_error("not a rational: '" + text + "'");
  };
  if (text.empty()) return fail();
  auto digits_ok = [](const std::string& s, size_t from) {
    if (from >= s.size()) return false;
    for (size_t i = from; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  size_t num_from = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
  if (!digits_ok(num, num_from) || !digits_ok(den, 0)) return fail();
  if (num[0] == '+') num.erase(0, 1);  // cpp_int rejects an explicit plus
  Int d(den);
  if (d == 0) return fail();
  return Rat(Int(num), d);
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Floor of an exact rational.
inline Int rat_floor(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (r < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_RATIONAL_HPP
