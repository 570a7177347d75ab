#include "dqforge/report.hpp"

#include <array>
#include <fstream>

#include "dqforge/error.hpp"

namespace dq {
namespace {

constexpr std::array<Stage, 5> kStages = {Stage::Dedup, Stage::Missing, Stage::Outliers, Stage::Typos, Stage::Logic};
constexpr std::array<Category, 5> kCategories = {Category::Redundancy, Category::Absence, Category::Outlier,
                                                 Category::Typographical, Category::Logic};

std::vector<std::string> planNames(const std::vector<std::size_t>& cols, const std::vector<std::string>& attributes) {
  std::vector<std::string> names;
  names.reserve(cols.size());
  for (std::size_t c : cols) names.push_back(attributes.at(c));
  return names;
}

}  // namespace

nlohmann::ordered_json configToJson(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["delimiter"] = std::string(1, config.dialect.delimiter);
  j["missing_sentinels"] = config.dialect.missingSentinels;

  j["key"] = {{"missing_threshold", config.key.missingThreshold},
              {"duplicate_threshold", config.key.duplicateThreshold},
              {"max_combo", config.key.maxCombo}};
  j["key_override"] = config.keyOverride;

  nlohmann::ordered_json includes = nlohmann::ordered_json::array();
  for (const PlanOverride& o : config.planIncludes) includes.push_back(o.stage + ":" + o.attribute);
  nlohmann::ordered_json excludes = nlohmann::ordered_json::array();
  for (const PlanOverride& o : config.planExcludes) excludes.push_back(o.stage + ":" + o.attribute);
  j["plan_include"] = std::move(includes);
  j["plan_exclude"] = std::move(excludes);

  j["justified_missing_threshold"] = config.justifiedMissingThreshold;

  j["outliers"] = {{"alpha_skew", config.outlier.alphaSkew},
                   {"alpha_kurtosis", config.outlier.alphaKurt},
                   {"beta_low", config.outlier.betaLow},
                   {"beta_high", config.outlier.betaHigh},
                   {"gamma", config.outlier.gamma},
                   {"forest_trees", config.outlier.forest.trees},
                   {"forest_subsample", config.outlier.forest.subsample},
                   {"forest_score_threshold", config.outlier.forest.scoreThreshold}};

  j["typos"] = {{"similarity_threshold", config.typoThreshold},
                {"gap_references", config.typoGapRefs},
                {"max_cluster_dominants", config.typoMaxDominants},
                {"dictionary", config.dictionaryPath}};

  j["logic"] = {{"min_support", config.logic.minSupport},
                {"min_confidence", config.logic.minConfidence},
                {"max_itemset_size", config.logic.maxItemsetSize},
                {"timeout_seconds", config.logic.timeoutSeconds}};

  j["seed"] = config.seed;
  j["threads"] = config.threads;
  nlohmann::ordered_json disabled = nlohmann::ordered_json::array();
  for (Stage s : config.disabledStages) disabled.push_back(stageName(s));
  j["disabled_stages"] = std::move(disabled);
  j["include_timings"] = config.includeTimings;
  return j;
}

nlohmann::ordered_json emitReport(const RunArtifacts& artifacts, const RunConfig& config) {
  nlohmann::ordered_json report;
  report["schema"] = "dqforge/1";
  report["mode"] = artifacts.mode;
  report["input"] = {{"path", artifacts.inputPath}, {"rows", artifacts.inputRows}, {"columns", artifacts.inputColumns}};
  report["output"] = {{"path", artifacts.outputPath}, {"rows", artifacts.outputRows}};
  report["seed"] = config.seed;
  report["config"] = configToJson(config);

  if (artifacts.key) {
    report["primary_key"] = artifacts.key->attributes;
    report["key_discovery"] = {{"method", artifacts.key->method},
                               {"duplicate_rate", artifacts.key->duplicateRate},
                               {"degraded_dedup", artifacts.plan.dedupDegraded}};
  } else {
    report["primary_key"] = nullptr;
    report["key_discovery"] = {{"method", "none"}, {"degraded_dedup", artifacts.plan.dedupDegraded}};
  }

  report["plan"] = {{"dedup", planNames(artifacts.plan.dedupColumns, artifacts.attributes)},
                    {"missing", planNames(artifacts.plan.missingColumns, artifacts.attributes)},
                    {"outliers", planNames(artifacts.plan.outlierColumns, artifacts.attributes)},
                    {"typos", planNames(artifacts.plan.typoColumns, artifacts.attributes)},
                    {"logic", planNames(artifacts.plan.logicColumns, artifacts.attributes)}};
  report["skipped_stages"] = artifacts.skippedStages;

  nlohmann::ordered_json profile = nlohmann::ordered_json::array();
  for (const ColumnProfile& p : artifacts.profiles) {
    nlohmann::ordered_json col;
    col["attribute"] = p.attribute;
    col["kind"] = columnKindName(p.kind);
    col["missing_rate"] = p.missingRate;
    col["unique_values"] = p.uniqueCount;
    if (p.mean) col["mean"] = *p.mean;
    if (p.stddev) col["stddev"] = *p.stddev;
    if (p.skewness) col["skewness"] = *p.skewness;
    if (p.kurtosis) col["kurtosis"] = *p.kurtosis;
    profile.push_back(std::move(col));
  }
  report["profile"] = std::move(profile);

  nlohmann::ordered_json findings;
  for (Stage s : kStages) findings[stageName(s)] = nlohmann::ordered_json::array();
  for (const Finding& f : artifacts.findings) findings[stageName(f.stage)].push_back(f.toJson());
  report["findings"] = std::move(findings);

  nlohmann::ordered_json categories;
  for (Category c : kCategories) {
    std::size_t count = 0, corrected = 0;
    for (const Finding& f : artifacts.findings) {
      if (f.category != c) continue;
      ++count;
      if (f.corrected) ++corrected;
    }
    categories[categoryName(c)] = {{"count", count}, {"corrected", corrected}, {"flag_only", count - corrected}};
  }
  report["categories"] = std::move(categories);

  nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
  for (const Warning& w : artifacts.warnings) warnings.push_back(w.toJson());
  report["warnings"] = std::move(warnings);

  if (config.includeTimings) {
    nlohmann::ordered_json timings;
    for (const StageTiming& t : artifacts.timings) timings[t.stage] = t.seconds;
    report["timings"] = std::move(timings);
  }
  return report;
}

void writeReportToFile(const nlohmann::ordered_json& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open report file for writing: " + path);
  out << report.dump(2) << '\n';
  if (!out) throw Error("failed to write report: " + path);
}

}  // namespace dq
