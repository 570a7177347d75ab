#include "dqforge/csv.hpp"

#include <fstream>
#include <sstream>

#include "dqforge/error.hpp"

namespace dq {

namespace {

bool isSentinel(const std::string& token, const CsvDialect& dialect) {
  if (token.empty()) return true;
  for (const auto& s : dialect.missingSentinels) {
    if (asciiEqualsIgnoreCase(token, s)) return true;
  }
  return false;
}

Cell makeCell(std::string token, const CsvDialect& dialect) {
  // Quoting carries no semantics here: a quoted empty field is still an
  // empty token and thus missing. There is no way to spell an empty text
  // cell in this format.
  if (isSentinel(token, dialect)) return Cell::missing();
  if (auto num = parseNumber(token)) return Cell::number(*num);
  return Cell::text(std::move(token));
}

struct RawRow {
  std::vector<std::string> fields;
  std::vector<bool> quoted;
  std::size_t line = 0;  // 1-based line where the row started
};

// Pulls the full input and splits it into rows. Tracks line numbers for
// error messages, including newlines inside quoted fields.
std::vector<RawRow> parseRows(std::istream& in, const CsvDialect& dialect) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<RawRow> rows;
  std::size_t line = 1;

  RawRow current;
  current.line = line;
  std::string field;
  bool fieldQuoted = false;
  bool anyField = false;

  enum class State { FieldStart, Unquoted, Quoted, QuoteInQuoted };
  State state = State::FieldStart;

  auto endField = [&]() {
    current.fields.push_back(std::move(field));
    current.quoted.push_back(fieldQuoted);
    field.clear();
    fieldQuoted = false;
    anyField = true;
  };
  auto endRow = [&]() {
    endField();
    rows.push_back(std::move(current));
    current = RawRow();
    current.line = line;
    anyField = false;
    state = State::FieldStart;
  };

  std::size_t i = 0;
  const std::size_t n = data.size();
  while (i < n) {
    char c = data[i];
    switch (state) {
      case State::FieldStart:
        if (c == '"') {
          fieldQuoted = true;
          state = State::Quoted;
          ++i;
        } else if (c == dialect.delimiter) {
          endField();
          ++i;
        } else if (c == '\r' || c == '\n') {
          if (c == '\r' && i + 1 < n && data[i + 1] == '\n') ++i;
          ++i;
          ++line;
          endRow();
        } else {
          field.push_back(c);
          state = State::Unquoted;
          ++i;
        }
        break;
      case State::Unquoted:
        if (c == dialect.delimiter) {
          endField();
          state = State::FieldStart;
          ++i;
        } else if (c == '\r' || c == '\n') {
          if (c == '\r' && i + 1 < n && data[i + 1] == '\n') ++i;
          ++i;
          ++line;
          endRow();
        } else if (c == '"') {
          throw CsvError("unexpected quote inside unquoted field at line " + std::to_string(line), line);
        } else {
          field.push_back(c);
          ++i;
        }
        break;
      case State::Quoted:
        if (c == '"') {
          state = State::QuoteInQuoted;
          ++i;
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        break;
      case State::QuoteInQuoted:
        if (c == '"') {
          field.push_back('"');
          state = State::Quoted;
          ++i;
        } else if (c == dialect.delimiter) {
          endField();
          state = State::FieldStart;
          ++i;
        } else if (c == '\r' || c == '\n') {
          if (c == '\r' && i + 1 < n && data[i + 1] == '\n') ++i;
          ++i;
          ++line;
          endRow();
        } else {
          throw CsvError("malformed quoted field at line " + std::to_string(line), line);
        }
        break;
    }
  }
  if (state == State::Quoted) {
    throw CsvError("unterminated quoted field starting near line " + std::to_string(current.line), current.line);
  }
  // Flush a final row without trailing newline. A lone pending empty field at
  // FieldStart with nothing read means the input ended cleanly.
  if (state != State::FieldStart || anyField || !field.empty()) {
    endField();
    rows.push_back(std::move(current));
  }
  return rows;
}

}  // namespace

Table loadTable(std::istream& in, const CsvDialect& dialect) {
  auto rows = parseRows(in, dialect);
  if (rows.empty()) throw CsvError("input has no header row", 1);

  Table table(rows[0].fields);
  const std::size_t width = rows[0].fields.size();

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& raw = rows[r];
    // Blank lines (a single empty unquoted field) are skipped in multi-column
    // tables; in a one-column table they are a legitimate missing row.
    if (width > 1 && raw.fields.size() == 1 && raw.fields[0].empty() && !raw.quoted[0]) continue;
    if (raw.fields.size() != width) {
      throw CsvError("row at line " + std::to_string(raw.line) + " has " +
                         std::to_string(raw.fields.size()) + " fields, expected " + std::to_string(width),
                     raw.line);
    }
    std::vector<Cell> cells;
    cells.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      cells.push_back(makeCell(raw.fields[c], dialect));
    }
    table.appendRow(std::move(cells));
  }
  return table;
}

Table loadTableFromFile(const std::string& path, const CsvDialect& dialect) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  return loadTable(in, dialect);
}

Table loadTableFromString(const std::string& text, const CsvDialect& dialect) {
  std::istringstream in(text);
  return loadTable(in, dialect);
}

namespace {

void writeField(std::ostream& out, const std::string& value, char delimiter) {
  bool needsQuotes = false;
  for (char c : value) {
    if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
      needsQuotes = true;
      break;
    }
  }
  if (!needsQuotes) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << "\"\"";
    else out << c;
  }
  out << '"';
}

}  // namespace

void writeTable(const Table& table, std::ostream& out, const CsvDialect& dialect) {
  for (std::size_t c = 0; c < table.columnCount(); ++c) {
    if (c) out << dialect.delimiter;
    writeField(out, table.attributeName(c), dialect.delimiter);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    for (std::size_t c = 0; c < table.columnCount(); ++c) {
      if (c) out << dialect.delimiter;
      const Cell& cell = table.at(r, c);
      if (!cell.isMissing()) writeField(out, cell.display(), dialect.delimiter);
    }
    out << '\n';
  }
}

void writeTableToFile(const Table& table, const std::string& path, const CsvDialect& dialect) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  writeTable(table, out, dialect);
}

std::string writeTableToString(const Table& table, const CsvDialect& dialect) {
  std::ostringstream out;
  writeTable(table, out, dialect);
  return out.str();
}

}  // namespace dq
