#include "dqforge/pipeline.hpp"

#include <chrono>
#include <unordered_set>

#include "dqforge/csv.hpp"
#include "dqforge/dedup.hpp"
#include "dqforge/error.hpp"
#include "dqforge/logic.hpp"
#include "dqforge/missing.hpp"
#include "dqforge/outlier.hpp"
#include "dqforge/typo.hpp"

namespace dq {
namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

  template <typename Fn>
  void timed(const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    sink_.push_back({name, elapsed.count()});
  }

 private:
  std::vector<StageTiming>& sink_;
};

std::optional<PrimaryKey> resolveKey(const Table& table, const std::vector<ColumnProfile>& profiles,
                                     const RunConfig& config) {
  if (!config.keyOverride.empty()) {
    PrimaryKey key;
    key.method = "override";
    for (const std::string& name : config.keyOverride) {
      auto col = table.columnIndex(name);
      if (!col) throw ConfigError("key override names unknown column: " + name);
      key.columns.push_back(*col);
      key.attributes.push_back(name);
    }
    key.duplicateRate = duplicateRate(table, key.columns);
    return key;
  }
  return discoverPrimaryKey(table, profiles, config.key);
}

// Profile, key, plan: the shared front end of both entry points.
void runFrontEnd(const Table& table, const RunConfig& config, RunArtifacts& art, StageClock& clock) {
  art.inputRows = table.rowCount();
  art.inputColumns = table.columnCount();
  art.attributes = table.attributes();

  clock.timed("profile", [&] { art.profiles = profileTable(table, config.threads); });
  clock.timed("key_discovery", [&] { art.key = resolveKey(table, art.profiles, config); });
  clock.timed("process_map",
              [&] { art.plan = mapProcesses(art.profiles, art.key, config.planIncludes, config.planExcludes); });
}

}  // namespace

PipelineResult runPipeline(Table table, const RunConfig& config, const std::string& inputPath,
                           const std::string& outputPath) {
  PipelineResult result;
  RunArtifacts& art = result.artifacts;
  art.mode = "run";
  art.inputPath = inputPath;
  art.outputPath = outputPath;

  StageClock clock(art.timings);
  runFrontEnd(table, config, art, clock);

  auto skipped = [&](Stage s) {
    if (config.disabledStages.count(s) == 0) return false;
    art.skippedStages.push_back(stageName(s));
    return true;
  };

  std::vector<Finding> findings;
  std::vector<Warning> warnings;

  if (!skipped(Stage::Dedup)) clock.timed("dedup", [&] { dropDuplicates(table, art.plan, findings, warnings); });

  if (!skipped(Stage::Missing)) {
    clock.timed("missing", [&] {
      runMissingStage(table, art.profiles, art.key, findings, warnings, config.justifiedMissingThreshold);
    });
  }

  if (!skipped(Stage::Outliers)) {
    clock.timed("outliers", [&] {
      OutlierConfig oc = config.outlier;
      oc.seed = config.seed;
      runOutlierStage(table, art.plan, oc, findings, warnings, config.threads);
    });
  }

  std::unordered_set<std::string> dictionary;  // must outlive the stage call
  if (!skipped(Stage::Typos)) {
    clock.timed("typos", [&] {
      TypoConfig tc;
      tc.threshold = config.typoThreshold;
      tc.gapRefs = config.typoGapRefs;
      tc.maxClusterDominants = config.typoMaxDominants;
      tc.seed = config.seed;
      if (!config.dictionaryPath.empty()) {
        dictionary = loadDictionaryFile(config.dictionaryPath);
        tc.dictionary = &dictionary;
      }
      runTypoStage(table, art.plan, tc, findings, warnings, config.threads);
    });
  }

  if (!skipped(Stage::Logic)) {
    clock.timed("logic", [&] { runLogicStage(table, art.plan, config.logic, findings, warnings); });
  }

  sortFindings(findings);
  art.findings = std::move(findings);
  art.warnings = std::move(warnings);
  art.outputRows = table.rowCount();

  result.hadWarnings = !art.warnings.empty();
  result.corrected = std::move(table);
  result.report = emitReport(art, config);
  return result;
}

PipelineResult profileOnly(Table table, const RunConfig& config, const std::string& inputPath) {
  PipelineResult result;
  RunArtifacts& art = result.artifacts;
  art.mode = "profile";
  art.inputPath = inputPath;

  StageClock clock(art.timings);
  runFrontEnd(table, config, art, clock);
  art.outputRows = table.rowCount();

  result.corrected = std::move(table);
  result.report = emitReport(art, config);
  return result;
}

int runPipelineOnFiles(const RunConfig& config, const std::string& inputPath, const std::string& outputPath,
                       const std::string& reportPath, bool profileMode) {
  Table table = loadTableFromFile(inputPath, config.dialect);
  PipelineResult result = profileMode ? profileOnly(std::move(table), config, inputPath)
                                      : runPipeline(std::move(table), config, inputPath, outputPath);
  if (!profileMode && !outputPath.empty()) writeTableToFile(result.corrected, outputPath, config.dialect);
  if (!reportPath.empty()) writeReportToFile(result.report, reportPath);
  return result.hadWarnings ? 2 : 0;
}

}  // namespace dq
