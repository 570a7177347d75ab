#include "dqforge/outlier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dqforge/parallel.hpp"
#include "dqforge/rng.hpp"

namespace dq {

OutlierColumnDecision detectColumnOutliers(const Table& table, std::size_t col, const OutlierConfig& config) {
  OutlierColumnDecision decision;
  decision.col = col;

  std::vector<std::size_t> rows;
  std::vector<double> values;
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    const Cell& cell = table.at(r, col);
    if (cell.isNumber()) {
      rows.push_back(r);
      values.push_back(cell.asNumber());
    }
  }

  auto moments = computeMoments(values);
  if (!moments || moments->stddev == 0.0) {
    decision.skipped = true;
    decision.skipReason = "spread is zero or sample too small";
    return decision;
  }
  decision.moments = *moments;
  if (!moments->skewness || !moments->kurtosis) {
    decision.skipped = true;
    decision.skipReason = "shape moments undefined";
    return decision;
  }

  std::vector<double> z(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    z[i] = (values[i] - moments->mean) / moments->stddev;
  }

  decision.gatesPassed =
      std::fabs(*moments->skewness) < config.alphaSkew && std::fabs(*moments->kurtosis) < config.alphaKurt;

  if (decision.gatesPassed) {
    decision.path = "interval";
    decision.effectiveLow = config.betaLow;
    decision.effectiveHigh = config.betaHigh;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (outsideInterval(z[i], decision.effectiveLow, decision.effectiveHigh)) {
        decision.flagged.push_back(FlaggedValue{rows[i], values[i], z[i], std::nullopt});
      }
    }
  } else {
    decision.path = "interval+forest";
    decision.effectiveLow = config.gamma * config.betaLow;
    decision.effectiveHigh = config.gamma * config.betaHigh;
    const std::uint64_t seed = deriveSeed(config.seed, "outliers", table.attributeName(col));
    IsolationForest1D forest(z, config.forest, seed);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!outsideInterval(z[i], decision.effectiveLow, decision.effectiveHigh)) continue;
      const double score = forest.score(z[i]);
      if (score >= config.forest.scoreThreshold) {
        decision.flagged.push_back(FlaggedValue{rows[i], values[i], z[i], score});
      }
    }
  }
  return decision;
}

OutlierStageResult runOutlierStage(Table& table, const ProcessPlan& plan, const OutlierConfig& config,
                                   std::vector<Finding>& findings, std::vector<Warning>& warnings,
                                   int threads) {
  OutlierStageResult result;
  result.decisions.resize(plan.outlierColumns.size());
  parallelFor(plan.outlierColumns.size(), threads, [&](std::size_t i) {
    result.decisions[i] = detectColumnOutliers(table, plan.outlierColumns[i], config);
  });

  for (const auto& decision : result.decisions) {
    const std::size_t col = decision.col;
    const std::string attr = table.attributeName(col);
    if (decision.skipped) {
      warnings.push_back(Warning{Stage::Outliers, attr, "outliers_skipped",
                                 "column skipped: " + decision.skipReason});
      continue;
    }
    if (decision.flagged.empty()) continue;

    std::unordered_set<std::size_t> flaggedRows;
    for (const auto& fv : decision.flagged) flaggedRows.insert(fv.row);

    // Anchors are present values that survived the flagging.
    std::vector<InterpolationAnchor> anchors;
    for (std::size_t r = 0; r < table.rowCount(); ++r) {
      const Cell& cell = table.at(r, col);
      if (cell.isNumber() && !flaggedRows.count(r)) {
        anchors.push_back(InterpolationAnchor{r, cell.asNumber()});
      }
    }
    if (anchors.empty()) {
      warnings.push_back(Warning{Stage::Outliers, attr, "all_flagged",
                                 "every present value was flagged; leaving column untouched"});
      continue;
    }

    nlohmann::ordered_json momentsJson = {{"mean", decision.moments.mean},
                                          {"stddev", decision.moments.stddev},
                                          {"skewness", *decision.moments.skewness},
                                          {"kurtosis", *decision.moments.kurtosis}};

    for (const auto& fv : decision.flagged) {
      auto filled = interpolateAt(anchors, fv.row);
      if (!filled) continue;
      Finding f;
      f.stage = Stage::Outliers;
      f.row = table.rowId(fv.row);
      f.columns = {attr};
      f.category = Category::Outlier;
      f.original = formatNumber(fv.value);
      f.corrected = formatNumber(filled->value);
      nlohmann::ordered_json rule = {{"path", decision.path},
                                     {"z", fv.z},
                                     {"interval", {-decision.effectiveLow, decision.effectiveHigh}},
                                     {"moments", momentsJson}};
      if (fv.forestScore) rule["forest_score"] = *fv.forestScore;
      if (filled->lower && filled->upper) {
        rule["repair"] = {{"action", "linear_interpolation"},
                          {"lower", {{"index", filled->lower->index}, {"value", filled->lower->value}}},
                          {"upper", {{"index", filled->upper->index}, {"value", filled->upper->value}}}};
      } else {
        const InterpolationAnchor& a = filled->lower ? *filled->lower : *filled->upper;
        rule["repair"] = {{"action", "boundary_copy"}, {"anchor", {{"index", a.index}, {"value", a.value}}}};
      }
      f.rulePath = std::move(rule);
      table.at(fv.row, col) = Cell::number(filled->value);
      findings.push_back(std::move(f));
      ++result.flaggedCells;
    }
  }
  return result;
}

}  // namespace dq
