#include <doctest.h>

#include <string>

#include "dqforge/csv.hpp"
#include "dqforge/error.hpp"

using dq::Cell;
using dq::CsvDialect;
using dq::Table;

TEST_CASE("empty field becomes missing, numbers parse full-token") {
  Table t = dq::loadTableFromString("a,b\n1,\n");
  REQUIRE(t.rowCount() == 1);
  CHECK(t.at(0, 0).isNumber());
  CHECK(t.at(0, 0).asNumber() == 1);
  CHECK(t.at(0, 1).isMissing());
}

TEST_CASE("sentinels are whole-token and case-insensitive") {
  Table t = dq::loadTableFromString("a,b,c,d\nNA,na,NAify,NaN\n");
  CHECK(t.at(0, 0).isMissing());
  CHECK(t.at(0, 1).isMissing());
  CHECK(t.at(0, 2).isText());  // partial match is not a sentinel
  CHECK(t.at(0, 3).isMissing());
}

TEST_CASE("quoted fields keep delimiters, quotes and newlines") {
  Table t = dq::loadTableFromString("a,b\n\"x,y\",\"he said \"\"hi\"\"\"\n\"line1\nline2\",2\n");
  REQUIRE(t.rowCount() == 2);
  CHECK(t.at(0, 0).asText() == "x,y");
  CHECK(t.at(0, 1).asText() == "he said \"hi\"");
  CHECK(t.at(1, 0).asText() == "line1\nline2");
  CHECK(t.at(1, 1).asNumber() == 2);
}

TEST_CASE("ragged rows are rejected with the offending line") {
  try {
    dq::loadTableFromString("a,b\n1,2\n3,4,5\n");
    FAIL("expected CsvError");
  } catch (const dq::CsvError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(dq::loadTableFromString("a,b\n1\n"), dq::CsvError);
}

TEST_CASE("unterminated quote is rejected") {
  CHECK_THROWS_AS(dq::loadTableFromString("a,b\n\"open,2\n"), dq::CsvError);
}

TEST_CASE("numeric text canonicalizes through a round trip") {
  Table t = dq::loadTableFromString("a,b\n7.0,0.5\n");
  const std::string out = dq::writeTableToString(t);
  CHECK(out == "a,b\n7,0.5\n");
}

TEST_CASE("round trip preserves content") {
  const std::string text = "name,qty,note\nwidget,3,\"a, note\"\n,NaN,plain\n";
  Table t = dq::loadTableFromString(text);
  Table back = dq::loadTableFromString(dq::writeTableToString(t));
  CHECK(t.sameContent(back));
}

TEST_CASE("alternate delimiter") {
  CsvDialect dialect;
  dialect.delimiter = ';';
  Table t = dq::loadTableFromString("a;b\n1;\"x;y\"\n", dialect);
  CHECK(t.at(0, 0).asNumber() == 1);
  CHECK(t.at(0, 1).asText() == "x;y");
  const std::string out = dq::writeTableToString(t, dialect);
  // only the active delimiter forces quotes; a comma would pass bare
  CHECK(out == "a;b\n1;\"x;y\"\n");
}

TEST_CASE("header is mandatory") {
  CHECK_THROWS_AS(dq::loadTableFromString(""), dq::CsvError);
}

TEST_CASE("trailing newline is optional, blank lines are skipped") {
  Table a = dq::loadTableFromString("a,b\n1,2");
  CHECK(a.rowCount() == 1);
  Table b = dq::loadTableFromString("a,b\n1,2\n\n3,4\n\n");
  CHECK(b.rowCount() == 2);
}

TEST_CASE("text that only looks numeric stays text when quoted tokens differ") {
  // leading zeros and mixed tokens are not numbers
  Table t = dq::loadTableFromString("a,b,c\n007,1e3,12ab\n");
  CHECK(t.at(0, 0).isNumber());  // 007 parses as 7
  CHECK(t.at(0, 1).isNumber());  // scientific notation accepted
  CHECK(t.at(0, 2).isText());
}
