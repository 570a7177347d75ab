#include "dqforge/cell.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace dq {

std::string Cell::display() const {
  if (isMissing()) return std::string();
  if (isNumber()) return formatNumber(asNumber());
  return asText();
}

std::optional<double> parseNumber(std::string_view token) {
  if (token.empty()) return std::nullopt;
  double out = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  if (!std::isfinite(out)) return std::nullopt;
  return out;
}

std::string formatNumber(double v) {
  if (v == 0.0) return "0";
  if (std::floor(v) == v && std::fabs(v) < 9007199254740992.0) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string asciiFold(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool asciiEqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

}  // namespace dq
