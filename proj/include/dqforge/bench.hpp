#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqforge/finding.hpp"
#include "dqforge/table.hpp"

namespace dq {

// Synthetic auction-style table, clean by construction: no missing cells, no
// repeated (SalesID, ModelID) pair, numeric columns bounded well inside the
// three-sigma band, and categorical vocabularies whose words are either
// dissimilar or balanced closely enough that none is mistaken for a typo of
// another. A pipeline run over this table must produce zero findings.
Table makeCleanTable(std::size_t rows, std::uint64_t seed);

// Column count of the synthetic schema.
std::size_t cleanTableColumns();

struct InjectionSpec {
  std::size_t duplicates = 0;
  std::size_t missing = 0;
  std::size_t outliers = 0;
  std::size_t typoEntry = 0;
  std::size_t typoUpper = 0;
  std::size_t typoLower = 0;
  std::size_t logicWrongCategory = 0;
  std::size_t logicIncoherentPair = 0;

  std::size_t total() const;
  // Reference error rates per 100k rows (20/161/200/100/50/50/150/300),
  // scaled linearly and rounded.
  static InjectionSpec scaled(std::size_t rows);
  static InjectionSpec fromJson(const nlohmann::ordered_json& j);
  nlohmann::ordered_json toJson() const;
};

enum class TruthCategory { Duplicate, Missing, Outlier, Typo, Logic };

const char* truthCategoryName(TruthCategory c);

struct TruthEntry {
  std::int64_t row = 0;  // row id in the corrupted table
  std::string column;    // empty for whole-row entries (duplicates)
  TruthCategory category = TruthCategory::Missing;
  std::string original;
};

struct GroundTruth {
  std::vector<TruthEntry> entries;
};

struct InjectionResult {
  Table corrupted;
  GroundTruth truth;
};

// Applies the injection spec to a copy of the clean table. Cell-level errors land on
// distinct cells; appended duplicate rows copy rows that received no other
// error. Identical (table, spec, seed) give identical output.
InjectionResult injectErrors(const Table& clean, const InjectionSpec& spec, std::uint64_t seed);

struct CategoryMetrics {
  std::size_t truthCount = 0;
  std::size_t matched = 0;       // truth entries found by at least one finding
  std::size_t findingCount = 0;  // findings whose category maps to this bucket
  std::size_t spurious = 0;      // findings matching no truth entry
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

struct Evaluation {
  std::map<std::string, CategoryMetrics> byCategory;
  CategoryMetrics overall;

  nlohmann::ordered_json toJson() const;
};

// A finding hits a truth entry when the row matches, the column matches
// (duplicates compare the row only) and the categories are compatible.
// Blanked textual cells may legitimately resurface as Logic findings, so
// Missing accepts both Absence and Logic.
Evaluation evaluate(const std::vector<Finding>& findings, const GroundTruth& truth);

}  // namespace dq
