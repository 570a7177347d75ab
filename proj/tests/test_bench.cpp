#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dqforge/bench.hpp"
#include "dqforge/pipeline.hpp"

using dq::Category;
using dq::Finding;
using dq::GroundTruth;
using dq::InjectionSpec;
using dq::Stage;
using dq::TruthCategory;
using dq::TruthEntry;

namespace {

std::map<TruthCategory, std::size_t> truthCounts(const GroundTruth& truth) {
  std::map<TruthCategory, std::size_t> counts;
  for (const auto& e : truth.entries) counts[e.category]++;
  return counts;
}

Finding makeFinding(Stage stage, std::int64_t row, std::string column, Category category) {
  Finding f;
  f.stage = stage;
  f.row = row;
  if (!column.empty()) f.columns = {std::move(column)};
  f.category = category;
  return f;
}

}  // namespace

TEST_CASE("clean table has the advertised shape and no gaps") {
  const auto t = dq::makeCleanTable(500, 11);
  CHECK(t.rowCount() == 500);
  CHECK(t.columnCount() == dq::cleanTableColumns());
  CHECK(dq::cleanTableColumns() == 53);
  for (std::size_t r = 0; r < t.rowCount(); ++r) {
    for (std::size_t c = 0; c < t.columnCount(); ++c) {
      REQUIRE_FALSE(t.at(r, c).isMissing());
    }
  }
  // same seed reproduces, different seed varies
  CHECK(t.sameContent(dq::makeCleanTable(500, 11)));
  CHECK_FALSE(t.sameContent(dq::makeCleanTable(500, 12)));
}

TEST_CASE("scaled spec applies the reference rates") {
  const auto spec = InjectionSpec::scaled(10000);
  CHECK(spec.duplicates == 2);
  CHECK(spec.missing == 16);
  CHECK(spec.outliers == 20);
  CHECK(spec.typoEntry == 10);
  CHECK(spec.typoUpper == 5);
  CHECK(spec.typoLower == 5);
  CHECK(spec.logicWrongCategory == 15);
  CHECK(spec.logicIncoherentPair == 30);
  CHECK(spec.total() == 103);

  const auto full = InjectionSpec::scaled(100000);
  CHECK(full.duplicates == 20);
  CHECK(full.missing == 161);
  CHECK(full.outliers == 200);
  CHECK(full.logicIncoherentPair == 300);
}

TEST_CASE("spec round-trips through json") {
  InjectionSpec spec;
  spec.duplicates = 3;
  spec.missing = 14;
  spec.outliers = 1;
  spec.typoEntry = 5;
  spec.typoUpper = 2;
  spec.typoLower = 0;
  spec.logicWrongCategory = 7;
  spec.logicIncoherentPair = 9;
  const auto j = spec.toJson();
  CHECK(j.at("duplicates") == 3);
  CHECK(j.at("missing") == 14);
  CHECK(j.at("typo_entry") == 5);
  CHECK(j.at("logic_incoherent_pair") == 9);
  const auto back = InjectionSpec::fromJson(j);
  CHECK(back.toJson() == j);

  // partial documents keep defaults for the rest
  const auto sparse = InjectionSpec::fromJson(nlohmann::ordered_json{{"outliers", 4}});
  CHECK(sparse.outliers == 4);
  CHECK(sparse.duplicates == 0);
  CHECK(sparse.total() == 4);
}

TEST_CASE("injection honors the requested counts on distinct sites") {
  const auto clean = dq::makeCleanTable(6000, 3);
  InjectionSpec spec;
  spec.duplicates = 4;
  spec.missing = 12;
  spec.outliers = 9;
  spec.typoEntry = 8;
  spec.typoUpper = 3;
  spec.typoLower = 3;
  spec.logicWrongCategory = 5;
  spec.logicIncoherentPair = 6;
  const auto injected = dq::injectErrors(clean, spec, 21);

  CHECK(injected.corrupted.rowCount() == clean.rowCount() + spec.duplicates);
  CHECK(injected.truth.entries.size() == spec.total());

  const auto counts = truthCounts(injected.truth);
  CHECK(counts.at(TruthCategory::Duplicate) == 4);
  CHECK(counts.at(TruthCategory::Missing) == 12);
  CHECK(counts.at(TruthCategory::Outlier) == 9);
  CHECK(counts.at(TruthCategory::Typo) == 14);
  CHECK(counts.at(TruthCategory::Logic) == 11);

  // no two cell-level corruptions share a cell
  std::set<std::pair<std::int64_t, std::string>> cells;
  for (const auto& e : injected.truth.entries) {
    if (e.column.empty()) continue;
    CHECK(cells.emplace(e.row, e.column).second);
  }

  // every corrupted cell really differs from the clean table
  for (const auto& e : injected.truth.entries) {
    if (e.column.empty()) continue;
    const std::size_t col = *injected.corrupted.columnIndex(e.column);
    const auto& now = injected.corrupted.at(static_cast<std::size_t>(e.row), col);
    const auto& before = clean.at(static_cast<std::size_t>(e.row), col);
    CHECK_FALSE(now == before);
    CHECK(e.original == (before.isMissing() ? "" : before.display()));
  }

  // reproducible end to end
  const auto rerun = dq::injectErrors(clean, spec, 21);
  CHECK(injected.corrupted.sameContent(rerun.corrupted));
  REQUIRE(rerun.truth.entries.size() == injected.truth.entries.size());
  for (std::size_t i = 0; i < rerun.truth.entries.size(); ++i) {
    CHECK(rerun.truth.entries[i].row == injected.truth.entries[i].row);
    CHECK(rerun.truth.entries[i].column == injected.truth.entries[i].column);
  }
}

TEST_CASE("duplicate rows copy rows untouched by other corruptions") {
  const auto clean = dq::makeCleanTable(3000, 5);
  InjectionSpec spec;
  spec.duplicates = 5;
  spec.missing = 30;
  spec.typoEntry = 10;
  const auto injected = dq::injectErrors(clean, spec, 8);

  std::set<std::int64_t> corruptedRows;
  for (const auto& e : injected.truth.entries) {
    if (!e.column.empty()) corruptedRows.insert(e.row);
  }
  for (const auto& e : injected.truth.entries) {
    if (e.category != TruthCategory::Duplicate) continue;
    CHECK(e.column.empty());
    CHECK(e.row >= static_cast<std::int64_t>(clean.rowCount()));
    // an appended duplicate matches some original row exactly
    bool matchesOriginal = false;
    for (std::size_t r = 0; r < clean.rowCount() && !matchesOriginal; ++r) {
      bool same = true;
      for (std::size_t c = 0; c < clean.columnCount(); ++c) {
        if (!(clean.at(r, c) == injected.corrupted.at(static_cast<std::size_t>(e.row), c))) {
          same = false;
          break;
        }
      }
      if (same) {
        matchesOriginal = true;
        CHECK(corruptedRows.count(static_cast<std::int64_t>(r)) == 0);
      }
    }
    CHECK(matchesOriginal);
  }
}

TEST_CASE("pipeline finds nothing to fix in the clean table") {
  dq::RunConfig config;
  for (const std::uint64_t seed : {2u, 31u}) {
    auto result = dq::runPipeline(dq::makeCleanTable(2500, seed), config, "clean.csv");
    CAPTURE(seed);
    CHECK(result.artifacts.findings.empty());
    CHECK(result.corrected.rowCount() == 2500);
  }
}

TEST_CASE("evaluation arithmetic on hand-built findings") {
  GroundTruth truth;
  truth.entries.push_back({7, "state", TruthCategory::Typo, "Texas"});
  truth.entries.push_back({9, "state", TruthCategory::Typo, "Reno"});
  truth.entries.push_back({12, "", TruthCategory::Duplicate, ""});
  truth.entries.push_back({4, "UsageBand", TruthCategory::Missing, "Low"});

  std::vector<Finding> findings;
  // hits the first typo
  findings.push_back(makeFinding(Stage::Typos, 7, "state", Category::Typographical));
  // wrong column: spurious
  findings.push_back(makeFinding(Stage::Typos, 9, "UsageBand", Category::Typographical));
  // duplicates match on the row alone
  findings.push_back(makeFinding(Stage::Dedup, 12, "", Category::Redundancy));
  // blanked textual cell resurfacing through rule checks still counts
  findings.push_back(makeFinding(Stage::Logic, 4, "UsageBand", Category::Logic));

  const auto eval = dq::evaluate(findings, truth);
  const auto& typo = eval.byCategory.at("typos");
  CHECK(typo.truthCount == 2);
  CHECK(typo.matched == 1);
  CHECK(typo.recall == doctest::Approx(0.5));
  CHECK(typo.spurious == 1);
  CHECK(typo.precision == doctest::Approx(0.5));

  CHECK(eval.byCategory.at("duplicates").recall == doctest::Approx(1.0));
  CHECK(eval.byCategory.at("missing").recall == doctest::Approx(1.0));

  CHECK(eval.overall.truthCount == 4);
  CHECK(eval.overall.matched == 3);
  CHECK(eval.overall.recall == doctest::Approx(0.75));

  // json view exposes the same numbers
  const auto j = eval.toJson();
  CHECK(j.at("overall").at("recall") == doctest::Approx(0.75));
  CHECK(j.at("typos").at("precision") == doctest::Approx(0.5));
}

TEST_CASE("empty truth and empty findings use the benign conventions") {
  GroundTruth truth;
  std::vector<Finding> findings;
  const auto empty = dq::evaluate(findings, truth);
  CHECK(empty.overall.recall == doctest::Approx(1.0));
  CHECK(empty.overall.precision == doctest::Approx(1.0));

  // findings with no truth: recall stays 1, precision drops
  findings.push_back(makeFinding(Stage::Typos, 1, "state", Category::Typographical));
  const auto noisy = dq::evaluate(findings, truth);
  CHECK(noisy.overall.recall == doctest::Approx(1.0));
  CHECK(noisy.overall.precision == doctest::Approx(0.0));

  // truth with no findings: precision stays 1, recall drops
  GroundTruth missed;
  missed.entries.push_back({3, "state", TruthCategory::Typo, "Texas"});
  const auto blind = dq::evaluate({}, missed);
  CHECK(blind.overall.precision == doctest::Approx(1.0));
  CHECK(blind.overall.recall == doctest::Approx(0.0));
}

TEST_CASE("injected table comes back with full marks on the cheap categories") {
  const auto clean = dq::makeCleanTable(10000, 42);
  InjectionSpec spec;
  spec.duplicates = 6;
  spec.missing = 25;
  spec.outliers = 20;
  const auto injected = dq::injectErrors(clean, spec, 42);

  dq::RunConfig config;
  config.disabledStages = {Stage::Typos, Stage::Logic};
  auto result = dq::runPipeline(injected.corrupted, config, "bench.csv");
  const auto eval = dq::evaluate(result.artifacts.findings, injected.truth);

  CHECK(eval.byCategory.at("duplicates").recall == doctest::Approx(1.0));
  CHECK(eval.byCategory.at("duplicates").precision == doctest::Approx(1.0));
  CHECK(eval.byCategory.at("missing").recall == doctest::Approx(1.0));
  CHECK(eval.byCategory.at("missing").precision == doctest::Approx(1.0));
  CHECK(eval.byCategory.at("outliers").recall == doctest::Approx(1.0));
  CHECK(eval.byCategory.at("outliers").precision == doctest::Approx(1.0));
}
