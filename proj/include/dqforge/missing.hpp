#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqforge/finding.hpp"
#include "dqforge/key_discovery.hpp"
#include "dqforge/process_map.hpp"
#include "dqforge/profile.hpp"
#include "dqforge/table.hpp"

namespace dq {

// Synthetic key values start with this prefix; later stages treat the whole
// namespace as opaque and never correct or regroup such tokens.
inline constexpr const char* kKeyPlaceholderPrefix = "__MISSING_KEY__";

bool isKeyPlaceholder(const std::string& value);

enum class MissingOutcome {
  KeyPlaceholder,      // key column: synthesize a unique token
  JustifiedFieldwide,  // column nearly empty by design: warn, leave alone
  NumericInterpolate,  // numeric column: linear interpolation over row index
  DeferToLogic,        // textual column: the rule stage decides later
};

struct MissingCell {
  std::size_t row = 0;  // position in the current table
  std::size_t col = 0;
  MissingOutcome outcome = MissingOutcome::DeferToLogic;
};

// Assigns exactly one outcome to every missing cell. Key columns always get
// placeholders; non-key columns missing above `justifiedThreshold` are
// considered intentionally sparse.
std::vector<MissingCell> classifyMissing(const Table& table, const std::vector<ColumnProfile>& profiles,
                                         const std::optional<PrimaryKey>& key, double justifiedThreshold = 0.95);

// Linear interpolation over (index, value) anchor pairs sorted by index.
// Interior gaps use the nearest anchors on both sides; positions outside the
// anchor range copy the nearest anchor value.
struct InterpolationAnchor {
  std::size_t index = 0;
  double value = 0.0;
};
struct Interpolated {
  double value = 0.0;
  std::optional<InterpolationAnchor> lower;
  std::optional<InterpolationAnchor> upper;
};
std::optional<Interpolated> interpolateAt(const std::vector<InterpolationAnchor>& anchors, std::size_t index);

struct MissingStageResult {
  std::size_t placeholders = 0;
  std::size_t interpolated = 0;
  std::size_t deferred = 0;
  std::size_t justified = 0;
};

MissingStageResult runMissingStage(Table& table, const std::vector<ColumnProfile>& profiles,
                                   const std::optional<PrimaryKey>& key, std::vector<Finding>& findings,
                                   std::vector<Warning>& warnings, double justifiedThreshold = 0.95);

}  // namespace dq
