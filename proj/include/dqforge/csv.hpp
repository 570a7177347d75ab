#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dqforge/table.hpp"

namespace dq {

// Dialect knobs for reading and writing. Sentinel matching is whole-token and
// case-insensitive; the empty string is always treated as missing.
struct CsvDialect {
  char delimiter = ',';
  std::vector<std::string> missingSentinels = {"NA", "NaN", "null"};
};

// Parses RFC-4180 style CSV with a mandatory header row. Quoted fields may
// contain delimiters, doubled quotes and embedded newlines. Each data field
// becomes Missing (sentinel), a Number (full-token parse) or Text.
Table loadTable(std::istream& in, const CsvDialect& dialect = CsvDialect());
Table loadTableFromFile(const std::string& path, const CsvDialect& dialect = CsvDialect());
Table loadTableFromString(const std::string& text, const CsvDialect& dialect = CsvDialect());

// Inverse of loadTable for tables in the canonical domain: missing cells
// write as empty fields, numbers in canonical form, text quoted as needed.
void writeTable(const Table& table, std::ostream& out, const CsvDialect& dialect = CsvDialect());
void writeTableToFile(const Table& table, const std::string& path, const CsvDialect& dialect = CsvDialect());
std::string writeTableToString(const Table& table, const CsvDialect& dialect = CsvDialect());

}  // namespace dq
