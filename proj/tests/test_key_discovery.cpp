#include <doctest.h>

#include <string>

#include "dqforge/csv.hpp"
#include "dqforge/key_discovery.hpp"
#include "dqforge/profile.hpp"

using dq::KeyConfig;
using dq::Table;

namespace {

std::optional<dq::PrimaryKey> discover(const Table& t, const KeyConfig& config = KeyConfig()) {
  return dq::discoverPrimaryKey(t, dq::profileTable(t, 1), config);
}

}  // namespace

TEST_CASE("duplicateRate counts surplus projections") {
  Table t = dq::loadTableFromString("a,b\n1,x\n1,x\n1,y\n2,x\n");
  CHECK(dq::duplicateRate(t, {0}) == doctest::Approx(2.0 / 4.0));       // 1 appears 3x -> 2 surplus
  CHECK(dq::duplicateRate(t, {0, 1}) == doctest::Approx(1.0 / 4.0));    // (1,x) twice
  CHECK(dq::duplicateRate(t, {1}) == doctest::Approx(2.0 / 4.0));
}

TEST_CASE("rows with missing projection cells never collide") {
  Table t = dq::loadTableFromString("a\n5\n\n\n5\n");
  CHECK(dq::duplicateRate(t, {0}) == doctest::Approx(1.0 / 4.0));
}

TEST_CASE("candidates respect the missing-rate cutoff and flag good names") {
  Table t = dq::loadTableFromString(
      "SalesID,holes,note\n"
      "1,,a\n2,,b\n3,1,c\n4,2,d\n5,3,e\n6,4,f\n7,5,g\n8,6,h\n9,7,i\n10,8,j\n"
      "11,9,k\n12,10,l\n13,11,m\n14,12,n\n15,13,o\n16,14,p\n17,15,q\n18,16,r\n19,17,s\n20,18,t\n");
  const auto candidates = dq::findCandidates(dq::profileTable(t, 1), KeyConfig());
  REQUIRE(candidates.size() == 2);  // "holes" is 10% missing
  CHECK(candidates[0].attribute == "SalesID");
  CHECK(candidates[0].nameMatch);
  CHECK(candidates[1].attribute == "note");
  CHECK_FALSE(candidates[1].nameMatch);
}

TEST_CASE("name matching is substring and case-insensitive") {
  Table t = dq::loadTableFromString(
      "product_code,surrogate_key,ident\nA,B,C\nD,E,F\n");
  const auto candidates = dq::findCandidates(dq::profileTable(t, 1), KeyConfig());
  REQUIRE(candidates.size() == 3);
  CHECK(candidates[0].nameMatch);   // CODE
  CHECK(candidates[1].nameMatch);   // KEY
  CHECK(candidates[2].nameMatch);   // ID prefix of ident
}

TEST_CASE("quickwin fires for a single unique well-named column") {
  Table t = dq::loadTableFromString("OrderID,city\n1,a\n2,b\n3,c\n4,d\n5,e\n");
  const auto key = discover(t);
  REQUIRE(key.has_value());
  CHECK(key->method == "pattern");
  REQUIRE(key->attributes.size() == 1);
  CHECK(key->attributes[0] == "OrderID");
  CHECK(key->duplicateRate == 0.0);
}

TEST_CASE("quickwin declines when the well-named column repeats") {
  Table t = dq::loadTableFromString(
      "GroupID,label\n1,a\n1,b\n2,a\n2,b\n3,a\n3,b\n4,a\n4,b\n5,a\n5,b\n"
      "6,a\n6,b\n7,a\n7,b\n8,a\n8,b\n9,a\n9,b\n10,a\n10,b\n");
  const auto key = discover(t);
  // GroupID alone duplicates half the table; the pair (GroupID,label) is unique
  REQUIRE(key.has_value());
  CHECK(key->method == "search");
  CHECK(key->attributes == std::vector<std::string>{"GroupID", "label"});
}

TEST_CASE("search tries singles before pairs and name matches first") {
  // both plain and well-named columns are unique; the well-named one must win
  Table t = dq::loadTableFromString(
      "plain,other,ItemID\n"
      "a,aa,1\nb,bb,2\nc,cc,3\nd,dd,4\ne,ee,5\n");
  const auto candidates = dq::findCandidates(dq::profileTable(t, 1), KeyConfig());
  const auto key = dq::uniquenessSearch(t, candidates, KeyConfig());
  REQUIRE(key.has_value());
  REQUIRE(key->attributes.size() == 1);
  CHECK(key->attributes[0] == "ItemID");
}

TEST_CASE("no key at all leaves the optional empty") {
  Table t = dq::loadTableFromString("a,b\nx,1\nx,1\nx,1\ny,2\ny,2\ny,2\nz,3\nz,3\nz,3\nx,1\n");
  CHECK_FALSE(discover(t).has_value());
}

TEST_CASE("maxCombo bounds the search") {
  // only the triple (a,b,c) is unique; with maxCombo 2 nothing qualifies
  Table t = dq::loadTableFromString(
      "a,b,c\n"
      "1,1,1\n1,1,2\n1,2,1\n1,2,2\n2,1,1\n2,1,2\n2,2,1\n2,2,2\n");
  KeyConfig config;
  CHECK_FALSE(discover(t, config).has_value());
  config.maxCombo = 3;
  const auto key = discover(t, config);
  REQUIRE(key.has_value());
  CHECK(key->attributes.size() == 3);
}

TEST_CASE("near-unique columns pass under the duplicate threshold") {
  // 21 rows, one repeated id -> duplicate rate 1/21 < 5%
  std::string csv = "RecordID\n";
  for (int i = 0; i < 20; ++i) csv += std::to_string(i) + "\n";
  csv += "19\n";
  Table t = dq::loadTableFromString(csv);
  const auto key = discover(t);
  REQUIRE(key.has_value());
  CHECK(key->duplicateRate == doctest::Approx(1.0 / 21.0));
}
