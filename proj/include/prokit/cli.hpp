#pragma once

// Command runners behind `prokit check|reduce|morphism|fuzz`. Each returns the exit code
// and a JSON report; the executable only parses flags and does I/O.
//
// Exit codes: 0 holds, 1 fails, 2 inconclusive, 64 usage or parse error.

#include <optional>
#include <string>

#include "prokit/fuzz.hpp"

namespace prokit::cli {

inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kUsage = 64;

struct Result {
  int exit_code = kHolds;
  std::string report;                  // JSON, newline terminated
  std::string summary;                 // one human-readable line per verdict
  std::optional<std::string> document; // reduce: the reduced system
};

struct Window {
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> probe;
};

/// PROKIT_HORIZON when set to a positive integer, else 32.
std::size_t default_horizon();

Result check(const std::string& document, const std::string& mode, const Window& window);
Result reduce(const std::string& document, const std::string& op, const std::string& subset,
              std::optional<std::size_t> start, const Window& window);
Result morphism(const std::string& document, const std::string& op, const Window& window);
Result fuzz(const FuzzOptions& options, std::size_t seeds);

}  // namespace prokit::cli
