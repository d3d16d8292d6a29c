#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace trs {

// All times are integer seconds since service midnight.  Quantities given in
// minutes by input data are converted to seconds at ingestion and stay that
// way for the rest of the pipeline.
using Seconds = std::int64_t;

// Road-network node identifier as it appears in the input files.
using NodeId = std::int64_t;

// Sentinel for "no path".  Kept far below INT64_MAX so that sums of a few
// travel times around the sentinel cannot overflow.
inline constexpr Seconds kUnreachable = std::numeric_limits<Seconds>::max() / 8;

inline bool is_reachable(Seconds t) { return t < kUnreachable; }

enum class Role { Rider, Driver };

inline const char* to_string(Role r) {
  return r == Role::Rider ? "rider" : "driver";
}

// Input-side failures: malformed files, unknown ids, inconsistent
// configuration.  CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal contracts (broken invariants detected at run time).
// CLI maps these to exit code 2.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline constexpr const char* kEngineName = "trsmatch";
inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace trs
