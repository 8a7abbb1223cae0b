#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qrmix/character.hpp"
#include "qrmix/group.hpp"

namespace qrmix {

/// Default acceptance suite. Criteria are numbered 1..10; byte-level
/// determinism (two runs compared) is left to the caller.
inline constexpr int kVerifyCriteria = 10;

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// Added to every D before it enters a bound. Nonzero values are a planted
  /// fault for demonstrating that the checks can fail.
  std::int64_t degree_offset = 0;
  /// Empty means all criteria.
  std::set<int> criteria;
};

struct CheckRecord {
  int criterion = 0;
  std::string check;
  std::string group;
  std::string detail;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double seconds = 0.0;  // wall clock; never written to the output files
};

struct VerifyResult {
  std::vector<CheckRecord> records;
  std::vector<CriterionResult> criteria;
  std::string csv;   // criterion,check,group,detail,measured,bound,pass
  std::string json;  // master_seed, degree_offset, criteria[], all_pass
  bool all_pass = true;
};

std::string criterion_name(int id);

/// Runs the selected criteria in order. `progress` is called after each one.
VerifyResult verify_paper_bounds(const VerifyOptions& options,
                                 const std::function<void(const CriterionResult&)>& progress = {});

/// Character degrees from a floating-point eigen-decomposition of a random
/// combination of class matrices. Independent of the finite-field route.
std::vector<std::uint64_t> numeric_character_degrees(const Group& g, std::uint64_t seed = 1);

}  // namespace qrmix
