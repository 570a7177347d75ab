#pragma once

#include <string>

#include "dqforge/config.hpp"
#include "dqforge/report.hpp"
#include "dqforge/table.hpp"

namespace dq {

struct PipelineResult {
  Table corrected;
  RunArtifacts artifacts;
  nlohmann::ordered_json report;
  bool hadWarnings = false;
};

// Full run in fixed stage order: profile, key discovery, process mapping,
// then dedup, missing, outliers, typos, logic. Each stage sees the previous
// stage's corrections. Stages in config.disabledStages are skipped and noted.
// The path arguments only annotate the report.
PipelineResult runPipeline(Table table, const RunConfig& config, const std::string& inputPath = "",
                           const std::string& outputPath = "");

// Profiling front end only: profile, key, plan. No data is modified.
PipelineResult profileOnly(Table table, const RunConfig& config, const std::string& inputPath = "");

// File-to-file convenience wrapper; empty outputPath or reportPath skips that
// artifact. Returns the process exit code: 0 clean, 2 when warnings exist.
int runPipelineOnFiles(const RunConfig& config, const std::string& inputPath, const std::string& outputPath,
                       const std::string& reportPath, bool profileMode = false);

}  // namespace dq
