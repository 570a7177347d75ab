#include <doctest.h>

#include <vector>

#include "dqforge/error.hpp"
#include "dqforge/table.hpp"

using dq::Cell;
using dq::Table;

namespace {

Table threeRows() {
  Table t({"a", "b"});
  t.appendRow({Cell::number(1), Cell::text("x")});
  t.appendRow({Cell::number(2), Cell::text("y")});
  t.appendRow({Cell::number(3), Cell::text("z")});
  return t;
}

}  // namespace

TEST_CASE("append assigns sequential row ids") {
  Table t = threeRows();
  CHECK(t.rowCount() == 3);
  CHECK(t.rowId(0) == 0);
  CHECK(t.rowId(2) == 2);
}

TEST_CASE("appendRow rejects wrong width") {
  Table t({"a", "b"});
  CHECK_THROWS_AS(t.appendRow({Cell::number(1)}), dq::Error);
  CHECK_THROWS_AS(t.appendRow({Cell::number(1), Cell::number(2), Cell::number(3)}), dq::Error);
}

TEST_CASE("columnIndex finds by exact name") {
  Table t = threeRows();
  CHECK(*t.columnIndex("b") == 1);
  CHECK_FALSE(t.columnIndex("B").has_value());
  CHECK_FALSE(t.columnIndex("missing").has_value());
}

TEST_CASE("eraseRows keeps ids of survivors stable") {
  Table t = threeRows();
  t.eraseRows({1});
  REQUIRE(t.rowCount() == 2);
  CHECK(t.rowId(0) == 0);
  CHECK(t.rowId(1) == 2);
  CHECK(t.at(1, 0).asNumber() == 3);

  // ids continue from where they left off
  const auto id = t.appendRow({Cell::number(4), Cell::text("w")});
  CHECK(id == 3);
}

TEST_CASE("eraseRows tolerates unsorted and repeated positions") {
  Table t = threeRows();
  t.eraseRows({2, 0, 2});
  REQUIRE(t.rowCount() == 1);
  CHECK(t.rowId(0) == 1);
}

TEST_CASE("sameContent ignores row ids") {
  Table a = threeRows();
  Table b({"a", "b"});
  b.appendRow({Cell::number(99), Cell::text("pad")});
  b.appendRow({Cell::number(1), Cell::text("x")});
  b.appendRow({Cell::number(2), Cell::text("y")});
  b.appendRow({Cell::number(3), Cell::text("z")});
  b.eraseRows({0});
  CHECK(a.sameContent(b));
  b.at(0, 1) = Cell::text("changed");
  CHECK_FALSE(a.sameContent(b));
}

TEST_CASE("cells compare across numeric representations") {
  CHECK(Cell::number(7) == Cell::number(7.0));
  CHECK(Cell::number(7) != Cell::text("7"));
  CHECK(Cell::missing() == Cell::missing());
  CHECK(Cell::missing() != Cell::text(""));
}
