#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dqforge/isolation_forest.hpp"
#include "dqforge/outlier.hpp"
#include "dqforge/rng.hpp"

using dq::Cell;
using dq::IsolationForest1D;
using dq::OutlierConfig;
using dq::Table;

namespace {

Table singleColumn(const std::vector<double>& values, const std::string& name = "v") {
  Table t({name});
  for (double v : values) t.appendRow({Cell::number(v)});
  return t;
}

std::vector<double> nearGaussian(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    if (std::abs(z) <= 2.8) out.push_back(100.0 + 15.0 * z);  // truncation keeps the sample inside the band
  }
  return out;
}

}  // namespace

TEST_CASE("interval endpoints are flagged") {
  CHECK(dq::outsideInterval(3.0, 3.0, 3.0));
  CHECK(dq::outsideInterval(-3.0, 3.0, 3.0));
  CHECK_FALSE(dq::outsideInterval(2.999, 3.0, 3.0));
  CHECK_FALSE(dq::outsideInterval(-2.999, 3.0, 3.0));
}

TEST_CASE("well-behaved column takes the plain interval path and finds the spike") {
  std::mt19937_64 rng = dq::makeRng(dq::deriveSeed(5, "test", "f1"));
  std::vector<double> values = nearGaussian(rng, 2000);
  values[700] = 100.0 + 15.0 * 9.0;  // nine sigma
  Table t = singleColumn(values);

  const auto decision = dq::detectColumnOutliers(t, 0, OutlierConfig());
  CHECK(decision.gatesPassed);
  CHECK(decision.path == "interval");
  REQUIRE(decision.flagged.size() == 1);
  CHECK(decision.flagged[0].row == 700);
  CHECK(decision.flagged[0].z > 3.0);
  CHECK_FALSE(decision.flagged[0].forestScore.has_value());
}

TEST_CASE("moment gates route heavy-tailed columns through the forest") {
  std::mt19937_64 rng = dq::makeRng(dq::deriveSeed(5, "test", "f2"));
  std::vector<double> values;
  for (int i = 0; i < 1500; ++i) {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    values.push_back(std::exp(1.5 * z));  // lognormal, kurtosis far above 30
  }
  Table t = singleColumn(values);
  const auto decision = dq::detectColumnOutliers(t, 0, OutlierConfig());
  CHECK_FALSE(decision.gatesPassed);
  CHECK(decision.path == "interval+forest");
  // widened interval: gamma * beta
  CHECK(decision.effectiveHigh == doctest::Approx(6.0));
  for (const auto& f : decision.flagged) {
    REQUIRE(f.forestScore.has_value());
    CHECK(*f.forestScore >= 0.6);
    CHECK(std::abs(f.z) >= 6.0);
  }
}

TEST_CASE("columns too small or constant are skipped") {
  const auto tiny = dq::detectColumnOutliers(singleColumn({1.0}), 0, OutlierConfig());
  CHECK(tiny.skipped);
  const auto constant = dq::detectColumnOutliers(singleColumn({4.0, 4.0, 4.0, 4.0}), 0, OutlierConfig());
  CHECK(constant.skipped);
}

TEST_CASE("flagged cells are re-filled by interpolation over surviving rows") {
  std::mt19937_64 rng = dq::makeRng(dq::deriveSeed(5, "test", "refill"));
  std::vector<double> values = nearGaussian(rng, 500);
  values[100] = 5000.0;
  Table t = singleColumn(values);

  dq::ProcessPlan plan;
  plan.outlierColumns = {0};
  std::vector<dq::Finding> findings;
  std::vector<dq::Warning> warnings;
  const auto result = dq::runOutlierStage(t, plan, OutlierConfig(), findings, warnings, 1);

  CHECK(result.flaggedCells == 1);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].category == dq::Category::Outlier);
  CHECK(findings[0].row == 100);
  CHECK(findings[0].original == "5000");
  REQUIRE(findings[0].corrected.has_value());
  // interpolated between the neighbours, nowhere near the spike
  const double filled = t.at(100, 0).asNumber();
  CHECK(filled > 0.0);
  CHECK(filled < 200.0);
}

TEST_CASE("forest scores are deterministic for a fixed seed and attribute") {
  std::mt19937_64 rng = dq::makeRng(dq::deriveSeed(5, "test", "det"));
  std::vector<double> values = nearGaussian(rng, 300);
  Table t = singleColumn(values, "Hours");

  OutlierConfig config;
  config.seed = 99;
  const auto a = dq::detectColumnOutliers(t, 0, config);
  const auto b = dq::detectColumnOutliers(t, 0, config);
  REQUIRE(a.flagged.size() == b.flagged.size());
  CHECK(a.moments.mean == b.moments.mean);

  // scores reproducible at the forest level too
  IsolationForest1D f1({1, 2, 3, 100}, IsolationForest1D::Config(), 7);
  IsolationForest1D f2({1, 2, 3, 100}, IsolationForest1D::Config(), 7);
  CHECK(f1.score(100) == f2.score(100));
}

TEST_CASE("isolation forest separates an isolated extreme from the bulk") {
  std::mt19937_64 rng = dq::makeRng(dq::deriveSeed(5, "test", "forest"));
  std::vector<double> values;
  for (int i = 0; i < 600; ++i)
    values.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);  // dense [0,1]
  values.push_back(25.0);                                            // lonely point far out

  IsolationForest1D forest(values, IsolationForest1D::Config(), 42);
  CHECK(forest.score(25.0) > forest.score(0.5));
  CHECK(forest.score(25.0) >= 0.6);
  CHECK(forest.score(0.5) < 0.6);
}

TEST_CASE("path correction matches the published formula") {
  // c(n) = 2 H(n-1) - 2(n-1)/n with harmonic numbers via ln + Euler gamma
  const double c256 = IsolationForest1D::averagePathCorrection(256);
  const double expected = 2.0 * (std::log(255.0) + 0.5772156649015329) - 2.0 * 255.0 / 256.0;
  CHECK(c256 == doctest::Approx(expected));
  CHECK(IsolationForest1D::averagePathCorrection(1) == doctest::Approx(0.0));
}

TEST_CASE("averagePathLength grows with how deep a value hides in the bulk") {
  std::vector<double> values;
  for (int i = 0; i < 256; ++i) values.push_back(static_cast<double>(i));
  IsolationForest1D forest(values, IsolationForest1D::Config(), 11);
  // the minimum is far easier to cut off than the middle
  CHECK(forest.averagePathLength(-500.0) < forest.averagePathLength(128.0));
}
