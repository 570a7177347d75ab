#include "dqforge/table.hpp"

#include <algorithm>
#include <unordered_set>

#include "dqforge/error.hpp"

namespace dq {

Table::Table(std::vector<std::string> attributes) : attributes_(std::move(attributes)) {
  std::unordered_set<std::string> seen;
  for (const auto& a : attributes_) {
    if (!seen.insert(a).second) throw Error("duplicate attribute name: " + a);
  }
}

std::optional<std::size_t> Table::columnIndex(const std::string& name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i] == name) return i;
  }
  return std::nullopt;
}

std::int64_t Table::appendRow(std::vector<Cell> cells) {
  if (cells.size() != attributes_.size()) throw Error("row width does not match attribute count");
  std::int64_t id = nextId_++;
  rows_.push_back(std::move(cells));
  rowIds_.push_back(id);
  return id;
}

void Table::appendRowWithId(std::int64_t id, std::vector<Cell> cells) {
  if (cells.size() != attributes_.size()) throw Error("row width does not match attribute count");
  rows_.push_back(std::move(cells));
  rowIds_.push_back(id);
  nextId_ = std::max(nextId_, id + 1);
}

void Table::eraseRows(const std::vector<std::size_t>& positions) {
  if (positions.empty()) return;
  std::vector<std::size_t> sorted(positions);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::vector<Cell>> keptRows;
  std::vector<std::int64_t> keptIds;
  keptRows.reserve(rows_.size() - sorted.size());
  keptIds.reserve(rows_.size() - sorted.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (cursor < sorted.size() && sorted[cursor] == i) {
      ++cursor;
      continue;
    }
    keptRows.push_back(std::move(rows_[i]));
    keptIds.push_back(rowIds_[i]);
  }
  rows_ = std::move(keptRows);
  rowIds_ = std::move(keptIds);
}

bool Table::sameContent(const Table& other) const {
  if (attributes_ != other.attributes_) return false;
  if (rows_.size() != other.rows_.size()) return false;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] != other.rows_[i]) return false;
  }
  return true;
}

}  // namespace dq
