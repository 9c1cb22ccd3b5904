#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfk/sampling.hpp"

namespace sfk {

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 20;
  Mode mode = Mode::Exact;
  /// Directory with pair_*.json and words.txt; empty skips fixture checks.
  std::string fixtures;
  int n = kDefaultGenerators;
};

struct CheckResult {
  std::string suite;
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  /// First failure or exception message.
  std::string detail;
  bool ok() const { return total > 0 && passed == total; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

/// grassmann, superlinalg, osp, normalform, invariants.
const std::vector<std::string>& suite_names();

/// Runs one suite or "all". Checks that only make sense exactly (kernel and
/// vanishing identities) run in exact mode whatever the requested mode.
/// Throws DomainError for an unknown suite name.
VerifyReport run_verify(const VerifyOptions& options);

void print_report(std::ostream& os, const VerifyReport& report);

}  // namespace sfk
