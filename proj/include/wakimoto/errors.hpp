#ifndef WAKIMOTO_ERRORS_HPP
#define WAKIMOTO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wakimoto {

// Base class for all engine errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A request that is mathematically undefined (illegal mode index, screening on
// a sector without the required integrality, non-degenerate labels where the
// degenerate family is required, ...).  Maps to CLI exit code 3.
class math_error : public error {
 public:
  explicit math_error(const std::string& what) : error(what) {}
};

// Malformed input: bad flags, bad config keys, out-of-range label parameters,
// unparsable rationals.  Maps to CLI exit code 2.
class usage_error : public error {
 public:
  explicit usage_error(const std::string& what) : error(what) {}
};

}  // namespace wakimoto

#endif  // WAKIMOTO_ERRORS_HPP
