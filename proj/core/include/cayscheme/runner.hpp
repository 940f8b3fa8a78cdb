#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cayscheme/group.hpp"

namespace cayscheme {

inline constexpr uint64_t kDefaultSeed = 20260801;

// Exit codes: 0 = all checks passed, 1 = a theorem violation or
// mismatch was found, 2 = input/config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
  std::string command;       // describe-group, classes, scheme, eigen,
                             // frame-quotient, verify-odd, verify-signed,
                             // verify-gs, quotient-check, sweep
  std::string group_source;  // "builtin:<descriptor>" or a file path
  int order_lo = 0;          // sweep only
  int order_hi = 0;
  bool odd_only = false;
  std::string partition = "pc";  // scheme command: "pc" or "conjugacy"
  std::string format = "plain";  // "plain" or "json"
  bool include_relation = false;
  bool include_timings = false;  // timings break byte-reproducibility
  int group_cap = kDefaultGroupCap;
  int gs_class_cap = 20;
  int signed_class_cap = 16;
  int prime_count = 3;
  uint64_t seed = kDefaultSeed;
};

// Executes the requested pipeline, writing reports to `out` and
// diagnostics to `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cayscheme
