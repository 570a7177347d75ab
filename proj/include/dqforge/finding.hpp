#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dq {

enum class Category { Redundancy, Absence, Outlier, Typographical, Logic };

const char* categoryName(Category c);

// Pipeline stages in execution order. The numeric value doubles as the sort
// rank for report emission.
enum class Stage { Dedup = 0, Missing = 1, Outliers = 2, Typos = 3, Logic = 4 };

const char* stageName(Stage s);

// One detected defect. Every finding names the row and columns it touches
// and carries the decision trail that produced it; corrected is empty for
// flag-only findings (nothing in the table was altered for them).
struct Finding {
  Stage stage = Stage::Dedup;
  std::int64_t row = 0;
  std::vector<std::string> columns;
  Category category = Category::Redundancy;
  nlohmann::ordered_json rulePath;
  std::string original;
  std::optional<std::string> corrected;

  nlohmann::ordered_json toJson() const;
};

// Advisory only: warnings never change data and never appear as findings.
struct Warning {
  Stage stage = Stage::Dedup;
  std::string scope;  // attribute, attribute:row, or "table"
  std::string code;
  std::string message;

  nlohmann::ordered_json toJson() const;
};

// Stable total order for report emission: stage, then row, then first
// column, then the serialized rule path as a final deterministic tiebreak.
void sortFindings(std::vector<Finding>& findings);

}  // namespace dq
