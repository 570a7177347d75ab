#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqforge/cell.hpp"

namespace dq {

// Rectangular dataset with named columns and stable per-row ids. Row ids are
// assigned at load time and survive deletions, so findings written late in
// the pipeline still point at the original record.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> attributes);

  std::size_t rowCount() const { return rows_.size(); }
  std::size_t columnCount() const { return attributes_.size(); }

  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::string& attributeName(std::size_t col) const { return attributes_[col]; }
  std::optional<std::size_t> columnIndex(const std::string& name) const;

  // Appends a row and assigns the next row id. Throws on width mismatch.
  std::int64_t appendRow(std::vector<Cell> cells);
  // Appends with an explicit id; used when copying rows between tables.
  void appendRowWithId(std::int64_t id, std::vector<Cell> cells);

  const Cell& at(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  Cell& at(std::size_t row, std::size_t col) { return rows_[row][col]; }
  const std::vector<Cell>& row(std::size_t row) const { return rows_[row]; }
  std::int64_t rowId(std::size_t row) const { return rowIds_[row]; }

  // Removes the rows at the given positions (ascending, deduplicated
  // internally) while preserving the order of the survivors.
  void eraseRows(const std::vector<std::size_t>& positions);

  bool sameContent(const Table& other) const;

 private:
  std::vector<std::string> attributes_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::int64_t> rowIds_;
  std::int64_t nextId_ = 0;
};

}  // namespace dq
