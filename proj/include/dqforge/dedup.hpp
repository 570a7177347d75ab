#pragma once

#include <cstdint>
#include <vector>

#include "dqforge/finding.hpp"
#include "dqforge/process_map.hpp"
#include "dqforge/table.hpp"

namespace dq {

// Rows (by position) sharing one projection value, in table order. A row with
// a missing value inside the projection never joins a group; two unknowns are
// not evidence of sameness.
struct DuplicateGroup {
  std::vector<std::size_t> rows;
};

std::vector<DuplicateGroup> findDuplicateGroups(const Table& table, const std::vector<std::size_t>& columns);

struct DedupResult {
  std::size_t removedRows = 0;
};

// Keeps the smallest row id of each group, erases the rest, and writes one
// finding per removed row naming the survivor and the shared projection.
DedupResult dropDuplicates(Table& table, const ProcessPlan& plan, std::vector<Finding>& findings,
                           std::vector<Warning>& warnings);

}  // namespace dq
