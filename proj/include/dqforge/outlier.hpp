#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqforge/finding.hpp"
#include "dqforge/isolation_forest.hpp"
#include "dqforge/missing.hpp"
#include "dqforge/process_map.hpp"
#include "dqforge/profile.hpp"
#include "dqforge/table.hpp"

namespace dq {

struct OutlierConfig {
  double alphaSkew = 6.0;    // moment gate on |skewness|
  double alphaKurt = 30.0;   // moment gate on kurtosis
  double betaLow = 3.0;      // z-interval is ]-betaLow, betaHigh[
  double betaHigh = 3.0;
  double gamma = 2.0;        // interval widening on the forest path
  IsolationForest1D::Config forest;
  std::uint64_t seed = 0;
};

// Endpoint values count as outliers: the acceptance interval is open.
inline bool outsideInterval(double z, double low, double high) {
  return z <= -low || z >= high;
}

struct FlaggedValue {
  std::size_t row = 0;  // position in the current table
  double value = 0.0;
  double z = 0.0;
  std::optional<double> forestScore;
};

// Decision record for one column. When the moment gates hold the plain
// z-interval applies (path "interval"); otherwise the interval is widened by
// gamma and only values the forest also isolates are flagged (path
// "interval+forest").
struct OutlierColumnDecision {
  std::size_t col = 0;
  bool skipped = false;
  std::string skipReason;
  Moments moments;
  bool gatesPassed = false;
  std::string path;
  double effectiveLow = 0.0;
  double effectiveHigh = 0.0;
  std::vector<FlaggedValue> flagged;
};

// Examines one column of the table without modifying it. The forest runs on
// z-scores, so the decision is invariant under affine rescaling of the
// column; its RNG stream is derived from (seed, attribute name).
OutlierColumnDecision detectColumnOutliers(const Table& table, std::size_t col, const OutlierConfig& config);

struct OutlierStageResult {
  std::size_t flaggedCells = 0;
  std::vector<OutlierColumnDecision> decisions;
};

// Flags, blanks and re-fills outlier cells by the same interpolation used for
// missing values; anchors are the surviving present values.
OutlierStageResult runOutlierStage(Table& table, const ProcessPlan& plan, const OutlierConfig& config,
                                   std::vector<Finding>& findings, std::vector<Warning>& warnings,
                                   int threads = 0);

}  // namespace dq
