#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqforge/key_discovery.hpp"
#include "dqforge/profile.hpp"

namespace dq {

// Which columns each correction stage will visit. Derived once from the
// pre-correction profiles; later stages consult the plan rather than
// re-deriving eligibility from partially corrected data.
struct ProcessPlan {
  std::vector<std::size_t> dedupColumns;    // key columns, or all when degraded
  bool dedupDegraded = false;               // true when no key was found
  std::vector<std::size_t> missingColumns;  // always every column
  std::vector<std::size_t> outlierColumns;  // numeric, mostly populated
  std::vector<std::size_t> typoColumns;     // purely textual, mostly populated
  std::vector<std::size_t> logicColumns;    // string-valued, enough variety

  bool inOutliers(std::size_t col) const;
  bool inTypos(std::size_t col) const;
  bool inLogic(std::size_t col) const;
};

struct PlanOverride {
  std::string stage;  // dedup|missing|outliers|typos|logic
  std::string attribute;
};

// Parses "stage:attr" strings as accepted on the command line.
PlanOverride parsePlanOverride(const std::string& spec);

// Eligibility rules: outliers want numeric columns with under half missing;
// typos want purely textual columns with under half missing (mixed
// alphanumerics are too noisy for edit-distance repair); logic admits any
// string-bearing column under three quarters missing with at least five
// distinct values. Include/exclude overrides are applied after the rules.
ProcessPlan mapProcesses(const std::vector<ColumnProfile>& profiles, const std::optional<PrimaryKey>& key,
                         const std::vector<PlanOverride>& includes = {},
                         const std::vector<PlanOverride>& excludes = {});

}  // namespace dq
