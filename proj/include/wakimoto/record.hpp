#ifndef WAKIMOTO_RECORD_HPP
#define WAKIMOTO_RECORD_HPP

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wakimoto/errors.hpp"
#include "wakimoto/version.hpp"

namespace wakimoto {

using Json = nlohmann::ordered_json;

// One subcommand outcome.  All rationals inside `parameters` and `payload`
// are "numerator/denominator" strings, never floats.
struct ResultRecord {
  std::string command;
  Json parameters = Json::object();
  std::string status;  // pass | fail | inconclusive | error
  Json payload = Json::object();
  std::string engine_version = kEngineVersion;

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["status"] = status;
    j["payload"] = payload;
    j["engine_version"] = engine_version;
    return j;
  }

  int exit_code() const { return status == "pass" ? 0 : 1; }
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string scalar_to_string(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Depth-first (path, scalar) listing; arrays use numeric path segments.
inline void flatten(const Json& v, const std::string& path,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [key, val] : v.items())
      flatten(val, path.empty() ? key : path + "." + key, out);
  } else if (v.is_array()) {
    size_t i = 0;
    for (const auto& val : v) flatten(val, path + "." + std::to_string(i++), out);
  } else {
    out.push_back({path, scalar_to_string(v)});
  }
}

}  // namespace detail

inline std::string render_record(const ResultRecord& rec,
                                 const std::string& format) {
  if (format == "json") return rec.to_json().dump(2) + "\n";

  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(rec.to_json(), "", rows);
  std::string out;
  if (format == "csv") {
    out = "key,value\n";
    for (const auto& [key, val] : rows)
      out += detail::csv_escape(key) + "," + detail::csv_escape(val) + "\n";
    return out;
  }
  if (format == "text") {
    for (const auto& [key, val] : rows) out += key + " = " + val + "\n";
    return out;
  }
  throw usage_error("format must be json, csv, or text");
}

// FNV-1a, 64-bit; keys the result cache.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string cache_key(const std::string& command,
                             const std::string& canonical_config) {
  const std::string material =
      command + "|" + canonical_config + "|" + kEngineVersion;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(material)));
  return std::string(buf);
}

}  // namespace wakimoto

#endif  // WAKIMOTO_RECORD_HPP
