#ifndef WAKIMOTO_VERSION_HPP
#define WAKIMOTO_VERSION_HPP

namespace wakimoto {

// Engine version: part of every ResultRecord and of cache keys, so bumping it
// invalidates cached results.
inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace wakimoto

#endif  // WAKIMOTO_VERSION_HPP
