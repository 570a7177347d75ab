#include "dqforge/finding.hpp"

#include <algorithm>
#include <tuple>

namespace dq {

const char* categoryName(Category c) {
  switch (c) {
    case Category::Redundancy: return "Redundancy";
    case Category::Absence: return "Absence";
    case Category::Outlier: return "Outlier";
    case Category::Typographical: return "Typographical";
    case Category::Logic: return "Logic";
  }
  return "Unknown";
}

const char* stageName(Stage s) {
  switch (s) {
    case Stage::Dedup: return "dedup";
    case Stage::Missing: return "missing";
    case Stage::Outliers: return "outliers";
    case Stage::Typos: return "typos";
    case Stage::Logic: return "logic";
  }
  return "unknown";
}

nlohmann::ordered_json Finding::toJson() const {
  nlohmann::ordered_json j;
  j["stage"] = stageName(stage);
  j["row"] = row;
  j["columns"] = columns;
  j["category"] = categoryName(category);
  j["original"] = original;
  if (corrected) j["corrected"] = *corrected;
  else j["corrected"] = nullptr;
  j["flag_only"] = !corrected.has_value();
  j["rule_path"] = rulePath;
  return j;
}

nlohmann::ordered_json Warning::toJson() const {
  nlohmann::ordered_json j;
  j["stage"] = stageName(stage);
  j["scope"] = scope;
  j["code"] = code;
  j["message"] = message;
  return j;
}

void sortFindings(std::vector<Finding>& findings) {
  std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    const std::string& colA = a.columns.empty() ? std::string() : a.columns.front();
    const std::string& colB = b.columns.empty() ? std::string() : b.columns.front();
    auto keyA = std::tie(a.stage, a.row, colA);
    auto keyB = std::tie(b.stage, b.row, colB);
    if (keyA != keyB) return keyA < keyB;
    return a.rulePath.dump() < b.rulePath.dump();
  });
}

}  // namespace dq
