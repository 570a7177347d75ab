#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqforge/table.hpp"

namespace dq {

enum class ColumnKind { Numeric, Textual, Mixed };

const char* columnKindName(ColumnKind kind);

// Per-column summary. A pure function of the column's multiset of values;
// row order never matters. Moments are defined only for Numeric columns
// with at least two distinct present values.
struct ColumnProfile {
  std::string attribute;
  ColumnKind kind = ColumnKind::Textual;
  std::size_t rowCount = 0;
  std::size_t missingCount = 0;
  double missingRate = 0.0;
  std::size_t uniqueCount = 0;
  // Canonical rendering -> occurrence count over present cells. Ordered so
  // that iteration is deterministic.
  std::map<std::string, std::size_t> frequencyTable;
  std::optional<double> mean;
  std::optional<double> stddev;  // unbiased (n-1 denominator)
  std::optional<double> skewness;
  std::optional<double> kurtosis;  // standardized fourth moment; normal data sits near 3
};

// Kind rules: Numeric when every present cell parsed as a number; Mixed when
// digits and letters meet inside a single value (ZX160 style) or numbers and
// text co-occur across cells; Textual otherwise.
ColumnKind inferColumnKind(const Table& table, std::size_t col);
std::vector<ColumnKind> inferColumnKinds(const Table& table);

ColumnProfile profileColumn(const Table& table, std::size_t col);
std::vector<ColumnProfile> profileTable(const Table& table, int threads = 0);

// Sample moments of a numeric sample: mean, unbiased stddev, standardized
// skewness and kurtosis (biased central moment ratios, the usual g-statistics).
struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
  std::optional<double> skewness;
  std::optional<double> kurtosis;
};
std::optional<Moments> computeMoments(const std::vector<double>& values);

}  // namespace dq
