#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqforge/bench.hpp"
#include "dqforge/config.hpp"
#include "dqforge/error.hpp"
#include "dqforge/pipeline.hpp"

namespace {

dq::Stage stageFromName(const std::string& name) {
  if (name == "dedup") return dq::Stage::Dedup;
  if (name == "missing") return dq::Stage::Missing;
  if (name == "outliers") return dq::Stage::Outliers;
  if (name == "typos") return dq::Stage::Typos;
  if (name == "logic") return dq::Stage::Logic;
  throw dq::ConfigError("unknown stage: " + name);
}

std::uint64_t seedFromEnvironment() {
  const char* env = std::getenv("DQFORGE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::stoull(env);
  } catch (...) {
    throw dq::ConfigError("DQFORGE_SEED must be an unsigned integer");
  }
}

struct CliState {
  dq::RunConfig config;
  std::string input;
  std::string output;
  std::string report;
  std::string delimiter = ",";
  std::vector<std::string> sentinels;
  std::vector<std::string> includes;
  std::vector<std::string> excludes;
  std::vector<std::string> disables;
};

void addPipelineFlags(CLI::App* cmd, CliState& s, bool withOutput) {
  cmd->add_option("--input", s.input, "input CSV file")->required();
  if (withOutput) cmd->add_option("--output", s.output, "corrected CSV file");
  cmd->add_option("--report", s.report, "JSON report file");

  cmd->add_option("--delimiter", s.delimiter, "field delimiter (single character, or \\t)");
  cmd->add_option("--missing-sentinel", s.sentinels, "token treated as a missing value (repeatable; replaces defaults)");

  cmd->add_option("--key", s.config.keyOverride, "use these columns as the primary key instead of discovering one");
  cmd->add_option("--key-missing-threshold", s.config.key.missingThreshold,
                  "max missing rate for key candidate columns");
  cmd->add_option("--key-duplicate-threshold", s.config.key.duplicateThreshold,
                  "max projection duplicate rate for an accepted key");
  cmd->add_option("--key-max-combo", s.config.key.maxCombo, "largest key combination searched");

  cmd->add_option("--include", s.includes, "force stage:attribute into the plan (repeatable)");
  cmd->add_option("--exclude", s.excludes, "remove stage:attribute from the plan (repeatable)");
  cmd->add_option("--disable", s.disables, "skip a whole stage: dedup|missing|outliers|typos|logic (repeatable)");

  cmd->add_option("--justified-missing-threshold", s.config.justifiedMissingThreshold,
                  "missing rate above which a column is reported as justified fieldwide absence");

  cmd->add_option("--alpha-skew", s.config.outlier.alphaSkew, "absolute skewness gate for the z-score path");
  cmd->add_option("--alpha-kurtosis", s.config.outlier.alphaKurt, "kurtosis gate for the z-score path");
  cmd->add_option("--beta-low", s.config.outlier.betaLow, "lower z-interval bound");
  cmd->add_option("--beta-high", s.config.outlier.betaHigh, "upper z-interval bound");
  cmd->add_option("--gamma", s.config.outlier.gamma, "interval widening factor on the forest path");
  cmd->add_option("--forest-trees", s.config.outlier.forest.trees, "isolation forest size");
  cmd->add_option("--forest-subsample", s.config.outlier.forest.subsample, "isolation forest subsample");
  cmd->add_option("--forest-score-threshold", s.config.outlier.forest.scoreThreshold,
                  "anomaly score cutoff on the forest path");

  cmd->add_option("--typo-threshold", s.config.typoThreshold, "similarity needed to group two values");
  cmd->add_option("--gap-references", s.config.typoGapRefs, "reference datasets per gap statistic evaluation");
  cmd->add_option("--max-cluster-dominants", s.config.typoMaxDominants,
                  "largest dominant set refined by clustering");
  cmd->add_option("--dictionary", s.config.dictionaryPath, "word list protecting real words from correction");

  cmd->add_option("--min-support", s.config.logic.minSupport, "Apriori minimum support");
  cmd->add_option("--min-confidence", s.config.logic.minConfidence, "minimum rule confidence");
  cmd->add_option("--max-itemset-size", s.config.logic.maxItemsetSize, "largest itemset mined");
  cmd->add_option("--logic-timeout", s.config.logic.timeoutSeconds, "rule mining time budget in seconds");

  cmd->add_option("--seed", s.config.seed, "master RNG seed (default: DQFORGE_SEED or 0)");
  cmd->add_option("--threads", s.config.threads, "worker threads, 0 = hardware concurrency");
  cmd->add_flag("--timings", s.config.includeTimings, "include wall-clock stage timings in the report");
}

void finalizeConfig(CLI::App* cmd, CliState& s) {
  if (s.delimiter == "\\t") {
    s.config.dialect.delimiter = '\t';
  } else if (s.delimiter.size() == 1) {
    s.config.dialect.delimiter = s.delimiter[0];
  } else {
    throw dq::ConfigError("--delimiter takes a single character");
  }
  if (cmd->count("--missing-sentinel") > 0) s.config.dialect.missingSentinels = s.sentinels;
  for (const std::string& spec : s.includes) s.config.planIncludes.push_back(dq::parsePlanOverride(spec));
  for (const std::string& spec : s.excludes) s.config.planExcludes.push_back(dq::parsePlanOverride(spec));
  for (const std::string& name : s.disables) s.config.disabledStages.insert(stageFromName(name));
}

int runBench(std::size_t rows, const std::string& specPath, std::uint64_t seed, const std::string& reportPath) {
  dq::InjectionSpec spec = dq::InjectionSpec::scaled(rows);
  if (!specPath.empty()) {
    std::ifstream in(specPath);
    if (!in) throw dq::ConfigError("cannot open injection spec: " + specPath);
    spec = dq::InjectionSpec::fromJson(nlohmann::ordered_json::parse(in));
  }

  dq::Table clean = dq::makeCleanTable(rows, seed);
  dq::InjectionResult injected = dq::injectErrors(clean, spec, seed);

  dq::RunConfig config;
  config.seed = seed;
  dq::PipelineResult result = dq::runPipeline(std::move(injected.corrupted), config, "synthetic", "");
  const dq::Evaluation eval = dq::evaluate(result.artifacts.findings, injected.truth);

  nlohmann::ordered_json out;
  out["schema"] = "dqforge.bench/1";
  out["rows"] = rows;
  out["columns"] = dq::cleanTableColumns();
  out["seed"] = seed;
  out["spec"] = spec.toJson();
  out["injected"] = injected.truth.entries.size();
  out["evaluation"] = eval.toJson();
  out["warnings"] = result.report["warnings"];

  const std::string text = out.dump(2) + "\n";
  if (reportPath.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(reportPath, std::ios::binary);
    if (!f) throw dq::ConfigError("cannot write bench report: " + reportPath);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqforge: explainable data-quality engine for CSV tables"};
  app.require_subcommand(1);

  CliState state;
  std::size_t benchRows = 10000;
  std::string benchSpec;
  std::uint64_t benchSeed = 0;
  std::string benchReport;

  try {
    state.config.seed = seedFromEnvironment();
    benchSeed = state.config.seed;
  } catch (const std::exception& e) {
    std::cerr << "dqforge: " << e.what() << "\n";
    return 1;
  }

  CLI::App* run = app.add_subcommand("run", "detect and correct defects, write corrected CSV + report");
  addPipelineFlags(run, state, true);

  CLI::App* profile = app.add_subcommand("profile", "profile + key discovery + process plan, no corrections");
  addPipelineFlags(profile, state, false);

  CLI::App* bench = app.add_subcommand("bench", "synthetic error-injection benchmark");
  bench->add_option("--rows", benchRows, "synthetic table size");
  bench->add_option("--spec", benchSpec, "JSON file with injection counts");
  bench->add_option("--seed", benchSeed, "master RNG seed (default: DQFORGE_SEED or 0)");
  bench->add_option("--report", benchReport, "where to write the bench report (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      finalizeConfig(run, state);
      return dq::runPipelineOnFiles(state.config, state.input, state.output, state.report, false);
    }
    if (profile->parsed()) {
      finalizeConfig(profile, state);
      return dq::runPipelineOnFiles(state.config, state.input, "", state.report, true);
    }
    if (bench->parsed()) return runBench(benchRows, benchSpec, benchSeed, benchReport);
  } catch (const std::exception& e) {
    std::cerr << "dqforge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
