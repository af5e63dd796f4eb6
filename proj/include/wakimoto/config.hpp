#ifndef WAKIMOTO_CONFIG_HPP
#define WAKIMOTO_CONFIG_HPP

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wakimoto/errors.hpp"
#include "wakimoto/fock.hpp"
#include "wakimoto/rational.hpp"

namespace wakimoto {

struct RunConfig {
  std::optional<long> p, pprime, m, mprime, l;
  std::optional<Rat> k;
  long degree = 3;
  long order = 10;
  std::string format = "json";
  std::optional<std::string> out;
  long jobs = 1;
  std::optional<std::string> cache;

  // Resolved module parameters; exactly one of (p, p') or k must be present.
  ModuleParams params() const {
    const bool labeled = p.has_value() || pprime.has_value();
    if (labeled && k.has_value())
      throw usage_error("provide either (p, pprime) or k, not both");
    if (labeled) {
      if (!p.has_value() || !pprime.has_value())
        throw usage_error("p and pprime must be given together");
      return ModuleParams::labeled(*p, *pprime);
    }
    if (!k.has_value()) throw usage_error("missing level: give (p, pprime) or k");
    return ModuleParams::generic(*k);
  }

  long require_m() const {
    if (!m.has_value()) throw usage_error("missing m");
    return *m;
  }
  long require_mprime() const {
    if (!mprime.has_value()) throw usage_error("missing mprime");
    return *mprime;
  }
  long l_or_zero() const { return l.value_or(0); }

  // Fixed-order canonical form; the cache key and determinism tests hash it.
  std::string canonical() const {
    std::string s;
    auto put = [&s](const char* key, const std::string& val) {
      s += key;
      s += '=';
      s += val;
      s += ';';
    };
    if (p) put("p", std::to_string(*p));
    if (pprime) put("pprime", std::to_string(*pprime));
    if (m) put("m", std::to_string(*m));
    if (mprime) put("mprime", std::to_string(*mprime));
    if (l) put("l", std::to_string(*l));
    if (k) put("k", format_rat(*k));
    put("degree", std::to_string(degree));
    put("order", std::to_string(order));
    put("format", format);
    return s;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline long parse_long(const std::string& key, const std::string& val) {
  try {
    size_t used = 0;
    const long v = std::stol(val, &used);
    if (used != val.size()) throw std::invalid_argument(val);
    return v;
  } catch (const std::exception&) {
    throw usage_error("value for " + key + " is not an integer: " + val);
  }
}

inline void apply_key(RunConfig& cfg, const std::string& key,
                      const std::string& val) {
  if (key == "p") cfg.p = parse_long(key, val);
  else if (key == "pprime") cfg.pprime = parse_long(key, val);
  else if (key == "m") cfg.m = parse_long(key, val);
  else if (key == "mprime") cfg.mprime = parse_long(key, val);
  else if (key == "l") cfg.l = parse_long(key, val);
  else if (key == "k") cfg.k = parse_rat(val);
  else if (key == "degree") cfg.degree = parse_long(key, val);
  else if (key == "order") cfg.order = parse_long(key, val);
  else if (key == "format") cfg.format = val;
  else if (key == "out") cfg.out = val;
  else if (key == "jobs") cfg.jobs = parse_long(key, val);
  else if (key == "cache") cfg.cache = val;
  else throw usage_error("unknown configuration key: " + key);
}

}  // namespace detail

// Flat `key = value` file with `#` comments; overrides (command-line flags,
// in order) are applied after the file, so flags win.
inline RunConfig load_config(
    const std::optional<std::string>& path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw usage_error("cannot open config file: " + *path);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw usage_error("malformed config line: " + line);
      detail::apply_key(cfg, detail::trim(line.substr(0, eq)),
                        detail::trim(line.substr(eq + 1)));
    }
  }
  for (const auto& [key, val] : overrides) detail::apply_key(cfg, key, val);

  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
    throw usage_error("format must be json, csv, or text");
  if (cfg.jobs < 1) throw usage_error("jobs must be >= 1");
  if (cfg.degree < 0) throw usage_error("degree must be >= 0");
  if (cfg.order < 0) throw usage_error("order must be >= 0");
  if (cfg.k && (*cfg.k == 0 || *cfg.k == -2))
    throw usage_error("level k must avoid 0 and -2");
  return cfg;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_CONFIG_HPP
