#include <doctest.h>

#include <set>
#include <string>

#include "dqforge/csv.hpp"
#include "dqforge/missing.hpp"
#include "dqforge/profile.hpp"

using dq::Cell;
using dq::Table;

namespace {

struct StageRun {
  Table table{std::vector<std::string>{}};
  std::vector<dq::Finding> findings;
  std::vector<dq::Warning> warnings;
  dq::MissingStageResult result;
};

StageRun runStage(const std::string& csv, std::optional<dq::PrimaryKey> key = std::nullopt,
                  double justified = 0.95) {
  StageRun run;
  run.table = dq::loadTableFromString(csv);
  const auto profiles = dq::profileTable(run.table, 1);
  run.result = dq::runMissingStage(run.table, profiles, key, run.findings, run.warnings, justified);
  return run;
}

dq::PrimaryKey keyOn(const Table& t, const std::string& attr) {
  dq::PrimaryKey key;
  key.columns = {*t.columnIndex(attr)};
  key.attributes = {attr};
  key.method = "pattern";
  return key;
}

}  // namespace

TEST_CASE("key gaps get unique opaque placeholders") {
  Table t = dq::loadTableFromString("RecID,v\n1,a\n,b\n,c\n4,d\n");
  const auto profiles = dq::profileTable(t, 1);
  std::vector<dq::Finding> findings;
  std::vector<dq::Warning> warnings;
  dq::runMissingStage(t, profiles, keyOn(t, "RecID"), findings, warnings);

  std::set<std::string> seen;
  for (std::size_t r = 0; r < t.rowCount(); ++r) {
    const Cell& cell = t.at(r, 0);
    REQUIRE_FALSE(cell.isMissing());
    if (cell.isText()) {
      CHECK(dq::isKeyPlaceholder(cell.asText()));
      seen.insert(cell.asText());
    }
  }
  CHECK(seen.size() == 2);  // distinct per cell
  REQUIRE(findings.size() == 2);
  for (const auto& f : findings) {
    CHECK(f.category == dq::Category::Absence);
    CHECK(f.corrected.has_value());
  }
}

TEST_CASE("numeric gaps interpolate linearly between present neighbours") {
  StageRun run = runStage("v\n10\n\n30\n");
  CHECK(run.table.at(1, 0).asNumber() == doctest::Approx(20.0));
  CHECK(run.result.interpolated == 1);
  REQUIRE(run.findings.size() == 1);
  CHECK(run.findings[0].corrected == std::string("20"));
}

TEST_CASE("interpolation anchors skip other holes and respect spacing") {
  // anchors at rows 0 and 3: the gap at row 1 sits a third of the way
  StageRun run = runStage("v\n0\n\n\n30\n");
  CHECK(run.table.at(1, 0).asNumber() == doctest::Approx(10.0));
  CHECK(run.table.at(2, 0).asNumber() == doctest::Approx(20.0));
}

TEST_CASE("boundary gaps copy the nearest anchor") {
  StageRun run = runStage("v\n\n5\n7\n\n");
  CHECK(run.table.at(0, 0).asNumber() == doctest::Approx(5.0));
  CHECK(run.table.at(3, 0).asNumber() == doctest::Approx(7.0));
}

TEST_CASE("textual gaps are deferred, flagged but unchanged") {
  StageRun run = runStage("t\na\n\nb\n");
  CHECK(run.table.at(1, 0).isMissing());
  CHECK(run.result.deferred == 1);
  REQUIRE(run.findings.size() == 1);
  CHECK(run.findings[0].category == dq::Category::Absence);
  CHECK_FALSE(run.findings[0].corrected.has_value());
}

TEST_CASE("nearly empty columns are justified with a warning, no findings") {
  std::string csv = "sparse,full\n";
  for (int i = 0; i < 40; ++i) csv += std::string(i == 0 ? "x" : "") + "," + std::to_string(i) + "\n";
  StageRun run = runStage(csv);
  CHECK(run.result.justified == 39);
  CHECK(run.findings.empty());
  REQUIRE(run.warnings.size() == 1);
  CHECK(run.warnings[0].scope == "sparse");
  // values left untouched
  CHECK(run.table.at(5, 0).isMissing());
}

TEST_CASE("interpolateAt handles exact hits and empty anchor sets") {
  using dq::InterpolationAnchor;
  const std::vector<InterpolationAnchor> anchors = {{2, 10.0}, {6, 30.0}};
  const auto mid = dq::interpolateAt(anchors, 4);
  REQUIRE(mid.has_value());
  CHECK(mid->value == doctest::Approx(20.0));
  CHECK(mid->lower->index == 2);
  CHECK(mid->upper->index == 6);

  const auto below = dq::interpolateAt(anchors, 0);
  REQUIRE(below.has_value());
  CHECK(below->value == doctest::Approx(10.0));

  CHECK_FALSE(dq::interpolateAt({}, 3).has_value());
}

TEST_CASE("interpolation anchors come from originally present cells only") {
  // the filled value at row 1 must not anchor the gap at row 2
  StageRun run = runStage("v\n0\n\n\n90\n");
  // true anchors 0 and 90 at rows 0 and 3: gaps at 30 and 60
  CHECK(run.table.at(1, 0).asNumber() == doctest::Approx(30.0));
  CHECK(run.table.at(2, 0).asNumber() == doctest::Approx(60.0));
}
