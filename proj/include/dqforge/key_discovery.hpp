#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqforge/profile.hpp"
#include "dqforge/table.hpp"

namespace dq {

struct KeyCandidate {
  std::size_t column = 0;
  std::string attribute;
  double missingRate = 0.0;
  bool nameMatch = false;  // name contains ID, CODE or KEY (case-insensitive)
};

struct PrimaryKey {
  std::vector<std::size_t> columns;
  std::vector<std::string> attributes;
  double duplicateRate = 0.0;
  // "pattern" when a single well-named column won outright, "search" when the
  // bounded uniqueness search found it, "override" when supplied by the user.
  std::string method;
};

struct KeyConfig {
  double missingThreshold = 0.05;  // candidate cutoff on missing rate
  double duplicateThreshold = 0.05;
  int maxCombo = 2;
};

// Share of surplus rows under the projection onto `columns`: rows whose full
// projection repeats an earlier one, divided by total row count. Rows with a
// missing value inside the projection never collide with anything.
double duplicateRate(const Table& table, const std::vector<std::size_t>& columns);

std::vector<KeyCandidate> findCandidates(const std::vector<ColumnProfile>& profiles, const KeyConfig& config);

// Fast path: fires only when exactly one candidate is name-matched and that
// column also looks like an identifier (low duplicate rate, not a real-valued
// measurement; integer-valued columns are acceptable).
std::optional<PrimaryKey> tryPatternQuickwin(const Table& table, const std::vector<KeyCandidate>& candidates,
                                             const KeyConfig& config);

// Enumerates candidate combinations smallest-size-first, name-matched columns
// ahead of the rest, and returns the first combination whose duplicate rate
// clears the threshold. Deterministic given the attribute order.
std::optional<PrimaryKey> uniquenessSearch(const Table& table, const std::vector<KeyCandidate>& candidates,
                                           const KeyConfig& config);

std::optional<PrimaryKey> discoverPrimaryKey(const Table& table, const std::vector<ColumnProfile>& profiles,
                                             const KeyConfig& config);

}  // namespace dq
