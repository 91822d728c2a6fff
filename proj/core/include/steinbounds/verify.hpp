#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steinbounds/config.hpp"
#include "steinbounds/distribution.hpp"

namespace steinbounds {

/// One numeric check: `passed` iff `value` <= `tolerance`.
struct CheckOutcome {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckOutcome> checks;

  std::size_t violations() const noexcept;
  bool passed() const noexcept { return violations() == 0; }
};

enum class Suite { Kernel, Sandwich, Oracle, Lipschitz, Bayes };
std::string_view to_string(Suite suite) noexcept;
std::optional<Suite> suite_from_string(std::string_view name) noexcept;
std::vector<Suite> all_suites();

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// Random pairs in the sandwich and oracle suites.
  int pairs = 200;
};

/// A pair of laws with the support of p2 inside that of p1.
struct PairCase {
  std::string label;
  Distribution p1;
  Distribution p2;
};

/// Deterministic draw of `count` nested catalog pairs.
std::vector<PairCase> random_pairs(std::uint64_t seed, int count, const QuadratureConfig& config = {});

/// Runs the sandwich and oracle suites over the same random pairs,
/// computing each oracle once.
struct PairSuites {
  SuiteReport sandwich;
  SuiteReport oracle;
};
PairSuites run_pair_suites(const VerifyOptions& options, const QuadratureConfig& config = {});

SuiteReport run_suite(Suite suite, const VerifyOptions& options, const QuadratureConfig& config = {});

}  // namespace steinbounds
