#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace dq {

// A cell holds nothing, a finite real number, or a piece of text.
// Integers and floats are not distinguished; both live in the number
// alternative so that "7" and "7.0" compare equal after a round trip.
class Cell {
 public:
  Cell() : value_(std::monostate{}) {}

  static Cell missing() { return Cell(); }
  static Cell number(double v) { Cell c; c.value_ = v; return c; }
  static Cell text(std::string s) { Cell c; c.value_ = std::move(s); return c; }

  bool isMissing() const { return std::holds_alternative<std::monostate>(value_); }
  bool isNumber() const { return std::holds_alternative<double>(value_); }
  bool isText() const { return std::holds_alternative<std::string>(value_); }

  double asNumber() const { return std::get<double>(value_); }
  const std::string& asText() const { return std::get<std::string>(value_); }

  bool operator==(const Cell& other) const { return value_ == other.value_; }
  bool operator!=(const Cell& other) const { return !(*this == other); }

  // Canonical rendering: empty for missing, formatNumber for numbers,
  // the raw text otherwise. Used for CSV output, grouping keys and findings.
  std::string display() const;

 private:
  std::variant<std::monostate, double, std::string> value_;
};

// Full-token numeric parse. Rejects partial matches, infinities and NaN.
std::optional<double> parseNumber(std::string_view token);

// Shortest representation that parses back to the same double. Integral
// values below 2^53 print without a decimal point so identifiers stay legible.
std::string formatNumber(double v);

// ASCII lowercase fold; bytes outside A-Z pass through untouched.
std::string asciiFold(std::string_view s);

bool asciiEqualsIgnoreCase(std::string_view a, std::string_view b);

}  // namespace dq
