#include "dqforge/dedup.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace dq {

namespace {

void appendCellKey(std::string& key, const Cell& cell) {
  std::string rendered = cell.display();
  key.push_back(cell.isNumber() ? 'n' : 't');
  key.append(std::to_string(rendered.size()));
  key.push_back(':');
  key.append(rendered);
}

}  // namespace

std::vector<DuplicateGroup> findDuplicateGroups(const Table& table, const std::vector<std::size_t>& columns) {
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  buckets.reserve(table.rowCount() * 2);
  std::string key;
  std::vector<std::string> order;  // first-seen order for deterministic output
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    key.clear();
    bool hasMissing = false;
    for (std::size_t c : columns) {
      const Cell& cell = table.at(r, c);
      if (cell.isMissing()) {
        hasMissing = true;
        break;
      }
      appendCellKey(key, cell);
    }
    if (hasMissing) continue;
    auto [it, inserted] = buckets.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r);
  }
  std::vector<DuplicateGroup> groups;
  for (const auto& k : order) {
    auto& rows = buckets[k];
    if (rows.size() >= 2) groups.push_back(DuplicateGroup{std::move(rows)});
  }
  return groups;
}

DedupResult dropDuplicates(Table& table, const ProcessPlan& plan, std::vector<Finding>& findings,
                           std::vector<Warning>& warnings) {
  if (plan.dedupDegraded) {
    warnings.push_back(Warning{Stage::Dedup, "table", "degraded_dedup",
                               "no primary key found; falling back to whole-record comparison"});
  }
  auto groups = findDuplicateGroups(table, plan.dedupColumns);

  DedupResult result;
  std::vector<std::size_t> toErase;
  for (const auto& group : groups) {
    // Row ids grow with position, so the first row in table order is the
    // survivor with the smallest id.
    std::size_t keeper = group.rows.front();
    for (std::size_t pos : group.rows) {
      if (table.rowId(pos) < table.rowId(keeper)) keeper = pos;
    }
    nlohmann::ordered_json projection = nlohmann::ordered_json::object();
    for (std::size_t c : plan.dedupColumns) {
      projection[table.attributeName(c)] = table.at(keeper, c).display();
    }
    std::string projectionText;
    for (std::size_t c : plan.dedupColumns) {
      if (!projectionText.empty()) projectionText.push_back('|');
      projectionText += table.at(keeper, c).display();
    }
    for (std::size_t pos : group.rows) {
      if (pos == keeper) continue;
      Finding f;
      f.stage = Stage::Dedup;
      f.row = table.rowId(pos);
      for (std::size_t c : plan.dedupColumns) f.columns.push_back(table.attributeName(c));
      f.category = Category::Redundancy;
      f.original = projectionText;
      f.corrected = "row removed";
      f.rulePath = {{"action", "drop_duplicate"},
                    {"kept_row", table.rowId(keeper)},
                    {"projection", projection},
                    {"degraded", plan.dedupDegraded}};
      findings.push_back(std::move(f));
      toErase.push_back(pos);
      ++result.removedRows;
    }
  }
  table.eraseRows(toErase);
  return result;
}

}  // namespace dq
