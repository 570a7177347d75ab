#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqforge/config.hpp"
#include "dqforge/finding.hpp"
#include "dqforge/key_discovery.hpp"
#include "dqforge/process_map.hpp"
#include "dqforge/profile.hpp"

namespace dq {

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

// Everything a run produced, gathered for serialization. Findings must be
// sorted before emission; emitReport asserts nothing and serializes in order.
struct RunArtifacts {
  std::string mode = "run";  // "run" or "profile"
  std::string inputPath;
  std::string outputPath;
  std::size_t inputRows = 0;
  std::size_t inputColumns = 0;
  std::size_t outputRows = 0;

  std::vector<std::string> attributes;  // column names at load time
  std::vector<ColumnProfile> profiles;
  std::optional<PrimaryKey> key;
  ProcessPlan plan;
  std::vector<std::string> skippedStages;

  std::vector<Finding> findings;
  std::vector<Warning> warnings;
  std::vector<StageTiming> timings;
};

// Schema-stable document: metadata, config echo, discovered key, plan,
// per-stage findings arrays, per-category counts, warnings. Timings are
// emitted only on request because they vary across runs and would break
// byte-level comparability.
nlohmann::ordered_json emitReport(const RunArtifacts& artifacts, const RunConfig& config);

void writeReportToFile(const nlohmann::ordered_json& report, const std::string& path);

}  // namespace dq
