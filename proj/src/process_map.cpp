#include "dqforge/process_map.hpp"

#include <algorithm>

#include "dqforge/error.hpp"

namespace dq {

namespace {

constexpr double kPopulatedCutoff = 0.5;   // outliers and typos
constexpr double kLogicMissingCutoff = 0.75;
constexpr std::size_t kLogicMinUnique = 5;

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void applyOverrides(std::vector<std::size_t>& columns, const std::string& stage,
                    const std::vector<ColumnProfile>& profiles, const std::vector<PlanOverride>& includes,
                    const std::vector<PlanOverride>& excludes) {
  auto columnOf = [&](const std::string& attr) -> std::optional<std::size_t> {
    for (std::size_t c = 0; c < profiles.size(); ++c) {
      if (profiles[c].attribute == attr) return c;
    }
    return std::nullopt;
  };
  for (const auto& inc : includes) {
    if (inc.stage != stage) continue;
    auto col = columnOf(inc.attribute);
    if (!col) throw ConfigError("include override names unknown attribute: " + inc.attribute);
    if (!contains(columns, *col)) columns.push_back(*col);
  }
  for (const auto& exc : excludes) {
    if (exc.stage != stage) continue;
    auto col = columnOf(exc.attribute);
    if (!col) throw ConfigError("exclude override names unknown attribute: " + exc.attribute);
    columns.erase(std::remove(columns.begin(), columns.end(), *col), columns.end());
  }
  std::sort(columns.begin(), columns.end());
}

}  // namespace

bool ProcessPlan::inOutliers(std::size_t col) const { return contains(outlierColumns, col); }
bool ProcessPlan::inTypos(std::size_t col) const { return contains(typoColumns, col); }
bool ProcessPlan::inLogic(std::size_t col) const { return contains(logicColumns, col); }

PlanOverride parsePlanOverride(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size()) {
    throw ConfigError("expected stage:attribute, got: " + spec);
  }
  PlanOverride out;
  out.stage = spec.substr(0, colon);
  out.attribute = spec.substr(colon + 1);
  static const char* kStages[] = {"dedup", "missing", "outliers", "typos", "logic"};
  bool known = false;
  for (const char* s : kStages) {
    if (out.stage == s) known = true;
  }
  if (!known) throw ConfigError("unknown stage in override: " + out.stage);
  return out;
}

ProcessPlan mapProcesses(const std::vector<ColumnProfile>& profiles, const std::optional<PrimaryKey>& key,
                         const std::vector<PlanOverride>& includes, const std::vector<PlanOverride>& excludes) {
  ProcessPlan plan;

  if (key) {
    plan.dedupColumns = key->columns;
  } else {
    plan.dedupDegraded = true;
    for (std::size_t c = 0; c < profiles.size(); ++c) plan.dedupColumns.push_back(c);
  }

  for (std::size_t c = 0; c < profiles.size(); ++c) {
    const ColumnProfile& p = profiles[c];
    plan.missingColumns.push_back(c);
    if (p.kind == ColumnKind::Numeric && p.missingRate < kPopulatedCutoff) {
      plan.outlierColumns.push_back(c);
    }
    if (p.kind == ColumnKind::Textual && p.missingRate < kPopulatedCutoff) {
      plan.typoColumns.push_back(c);
    }
    if ((p.kind == ColumnKind::Textual || p.kind == ColumnKind::Mixed) &&
        p.missingRate < kLogicMissingCutoff && p.uniqueCount >= kLogicMinUnique) {
      plan.logicColumns.push_back(c);
    }
  }

  applyOverrides(plan.outlierColumns, "outliers", profiles, includes, excludes);
  applyOverrides(plan.typoColumns, "typos", profiles, includes, excludes);
  applyOverrides(plan.logicColumns, "logic", profiles, includes, excludes);
  applyOverrides(plan.dedupColumns, "dedup", profiles, includes, excludes);
  return plan;
}

}  // namespace dq
