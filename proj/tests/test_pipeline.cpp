#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "dqforge/csv.hpp"
#include "dqforge/error.hpp"
#include "dqforge/pipeline.hpp"
#include "dqforge/typo.hpp"

using dq::RunConfig;
using dq::Stage;

namespace {

// One defect per stage: a duplicated key, a numeric gap, a 500 spike in a
// column that otherwise cycles over {40,47,54}, and a one-letter typo.
std::string integrationCsv() {
  std::string csv = "OrderID,reading,state\n";
  for (int i = 0; i < 59; ++i) {
    std::string reading;
    if (i == 20)
      reading = "";
    else if (i == 45)
      reading = "500";
    else
      reading = std::to_string(40 + (i * 7) % 21);
    csv += std::to_string(100 + i) + "," + reading + "," + (i == 33 ? "Texsa" : "Texas") + "\n";
  }
  csv += "100,40,Texas\n";  // repeats the first key
  return csv;
}

std::size_t stageFindings(const dq::RunArtifacts& artifacts, Stage stage) {
  std::size_t count = 0;
  for (const auto& f : artifacts.findings) {
    if (f.stage == stage) ++count;
  }
  return count;
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("every stage lands its correction in one pass") {
  RunConfig config;
  auto result = dq::runPipeline(dq::loadTableFromString(integrationCsv()), config, "mini.csv");

  CHECK(result.corrected.rowCount() == 59);
  CHECK(result.corrected.at(20, 1).asNumber() == doctest::Approx(43.5));
  CHECK(result.corrected.at(45, 1).asNumber() == doctest::Approx(50.5));
  CHECK(result.corrected.at(33, 2).asText() == "Texas");

  CHECK(stageFindings(result.artifacts, Stage::Dedup) == 1);
  CHECK(stageFindings(result.artifacts, Stage::Missing) == 1);
  CHECK(stageFindings(result.artifacts, Stage::Outliers) == 1);
  CHECK(stageFindings(result.artifacts, Stage::Typos) == 1);
  CHECK(stageFindings(result.artifacts, Stage::Logic) == 0);

  CHECK(result.report.at("primary_key") == nlohmann::ordered_json::array({"OrderID"}));
  CHECK(result.report.at("key_discovery").at("method") == "pattern");
  CHECK_FALSE(result.hadWarnings);
  CHECK(result.report.at("skipped_stages").empty());
}

TEST_CASE("disabled stages are skipped, noted and leave the data alone") {
  RunConfig config;
  config.disabledStages = {Stage::Dedup, Stage::Outliers};
  auto result = dq::runPipeline(dq::loadTableFromString(integrationCsv()), config, "mini.csv");

  // the duplicate row and the spike both survive
  CHECK(result.corrected.rowCount() == 60);
  CHECK(result.corrected.at(45, 1).asNumber() == doctest::Approx(500.0));
  CHECK(stageFindings(result.artifacts, Stage::Dedup) == 0);
  CHECK(stageFindings(result.artifacts, Stage::Outliers) == 0);

  // the enabled stages still run
  CHECK(result.corrected.at(20, 1).asNumber() == doctest::Approx(43.5));
  CHECK(result.corrected.at(33, 2).asText() == "Texas");

  CHECK(result.report.at("skipped_stages") == nlohmann::ordered_json::array({"dedup", "outliers"}));
}

TEST_CASE("file entry point returns 0 when quiet and 2 when warnings exist") {
  const std::string in = "/tmp/dq_pipe_in.csv";
  const std::string out = "/tmp/dq_pipe_out.csv";
  const std::string rep = "/tmp/dq_pipe_report.json";
  writeFile(in, integrationCsv());

  RunConfig config;
  CHECK(dq::runPipelineOnFiles(config, in, out, rep) == 0);

  const auto written = dq::loadTableFromFile(out);
  CHECK(written.rowCount() == 59);
  std::ifstream repIn(rep);
  REQUIRE(repIn.good());
  const auto report = nlohmann::ordered_json::parse(repIn);
  CHECK(report.at("schema") == "dqforge/1");
  CHECK(report.at("mode") == "run");

  // a column that is almost entirely blank draws a warning and exit code 2
  std::string sparse = "OrderID,extra\n";
  for (int i = 0; i < 40; ++i) sparse += std::to_string(500 + i) + "," + (i == 0 ? "only" : "") + "\n";
  writeFile(in, sparse);
  CHECK(dq::runPipelineOnFiles(config, in, out, rep) == 2);
  std::ifstream repIn2(rep);
  const auto report2 = nlohmann::ordered_json::parse(repIn2);
  CHECK_FALSE(report2.at("warnings").empty());
}

TEST_CASE("profile mode reports without touching anything") {
  const std::string in = "/tmp/dq_profile_in.csv";
  const std::string rep = "/tmp/dq_profile_report.json";
  writeFile(in, integrationCsv());

  RunConfig config;
  CHECK(dq::runPipelineOnFiles(config, in, "", rep, true) == 0);
  std::ifstream repIn(rep);
  REQUIRE(repIn.good());
  const auto report = nlohmann::ordered_json::parse(repIn);
  CHECK(report.at("mode") == "profile");
  // profiling never produces findings
  for (const char* stage : {"dedup", "missing", "outliers", "typos", "logic"}) {
    CHECK(report.at("findings").at(stage).empty());
  }
}

TEST_CASE("an explicit key bypasses discovery") {
  RunConfig config;
  config.keyOverride = {"OrderID"};
  auto result = dq::runPipeline(dq::loadTableFromString(integrationCsv()), config);
  CHECK(result.report.at("key_discovery").at("method") == "override");
  CHECK(result.corrected.rowCount() == 59);  // dedup still uses it

  RunConfig bad;
  bad.keyOverride = {"NoSuchColumn"};
  CHECK_THROWS_AS(dq::runPipeline(dq::loadTableFromString(integrationCsv()), bad), dq::ConfigError);
}

TEST_CASE("a dictionary turns review flags into known-word notes") {
  const std::string dict = "/tmp/dq_dict.txt";
  writeFile(dict, "NORTH DAKOTA\n\nsomethingelse\n");

  const auto words = dq::loadDictionaryFile(dict);
  CHECK(words.count("north dakota") == 1);  // folded on load
  CHECK(words.count("somethingelse") == 1);
  CHECK(words.count("") == 0);

  // two real regions close in edit distance plus one rare typo of the bigger
  std::string csv = "OrderID,region\n";
  for (int i = 0; i < 59; ++i) {
    const char* region = i < 30 ? "South Dakota" : (i < 58 ? "North Dakota" : "South Dakotb");
    csv += std::to_string(700 + i) + "," + region + "\n";
  }

  auto warningCode = [](const dq::PipelineResult& result) {
    for (const auto& w : result.artifacts.warnings) {
      if (w.stage == Stage::Typos) return w.code;
    }
    return std::string();
  };

  RunConfig plain;
  auto unaided = dq::runPipeline(dq::loadTableFromString(csv), plain);
  CHECK(unaided.corrected.at(58, 1).asText() == "South Dakota");  // typo fixed
  CHECK(unaided.corrected.at(35, 1).asText() == "North Dakota");  // frequent value kept
  CHECK(warningCode(unaided) == "review_variant");

  RunConfig worded;
  worded.dictionaryPath = dict;
  auto aided = dq::runPipeline(dq::loadTableFromString(csv), worded);
  CHECK(aided.corrected.at(58, 1).asText() == "South Dakota");
  CHECK(aided.corrected.at(35, 1).asText() == "North Dakota");
  CHECK(warningCode(aided) == "reconciled_dictionary_word");

  CHECK_THROWS_AS(dq::loadDictionaryFile("/tmp/definitely/not/here.txt"), dq::ConfigError);
}
