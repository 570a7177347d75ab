#include "dqforge/profile.hpp"

#include <cmath>

#include "dqforge/parallel.hpp"

namespace dq {

const char* columnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Numeric: return "numeric";
    case ColumnKind::Textual: return "textual";
    case ColumnKind::Mixed: return "mixed";
  }
  return "unknown";
}

namespace {

bool hasDigitAndAlpha(const std::string& s) {
  bool digit = false, alpha = false;
  for (unsigned char c : s) {
    if (c >= '0' && c <= '9') digit = true;
    else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) alpha = true;
    if (digit && alpha) return true;
  }
  return false;
}

}  // namespace

ColumnKind inferColumnKind(const Table& table, std::size_t col) {
  bool sawNumber = false;
  bool sawText = false;
  bool sawIntraMixed = false;
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    const Cell& cell = table.at(r, col);
    if (cell.isMissing()) continue;
    if (cell.isNumber()) {
      sawNumber = true;
    } else {
      sawText = true;
      if (!sawIntraMixed && hasDigitAndAlpha(cell.asText())) sawIntraMixed = true;
    }
  }
  if (sawIntraMixed || (sawNumber && sawText)) return ColumnKind::Mixed;
  if (sawNumber) return ColumnKind::Numeric;
  return ColumnKind::Textual;
}

std::vector<ColumnKind> inferColumnKinds(const Table& table) {
  std::vector<ColumnKind> kinds(table.columnCount());
  for (std::size_t c = 0; c < table.columnCount(); ++c) kinds[c] = inferColumnKind(table, c);
  return kinds;
}

std::optional<Moments> computeMoments(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return std::nullopt;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double nd = static_cast<double>(n);
  const double var = m2 / (nd - 1.0);
  Moments out;
  out.mean = mean;
  out.stddev = std::sqrt(var);
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (m2 > 0.0) {
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2);
  }
  return out;
}

ColumnProfile profileColumn(const Table& table, std::size_t col) {
  ColumnProfile p;
  p.attribute = table.attributeName(col);
  p.kind = inferColumnKind(table, col);
  p.rowCount = table.rowCount();

  std::vector<double> numbers;
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    const Cell& cell = table.at(r, col);
    if (cell.isMissing()) {
      ++p.missingCount;
      continue;
    }
    ++p.frequencyTable[cell.display()];
    if (cell.isNumber()) numbers.push_back(cell.asNumber());
  }
  p.missingRate = p.rowCount == 0 ? 0.0 : static_cast<double>(p.missingCount) / static_cast<double>(p.rowCount);
  p.uniqueCount = p.frequencyTable.size();

  if (p.kind == ColumnKind::Numeric && p.uniqueCount >= 2) {
    if (auto m = computeMoments(numbers)) {
      p.mean = m->mean;
      p.stddev = m->stddev;
      p.skewness = m->skewness;
      p.kurtosis = m->kurtosis;
    }
  } else if (p.kind == ColumnKind::Numeric && !numbers.empty()) {
    // Constant column: mean is defined, spread is zero, shape is undefined.
    if (auto m = computeMoments(numbers)) {
      p.mean = m->mean;
      p.stddev = m->stddev;
    } else if (numbers.size() == 1) {
      p.mean = numbers[0];
    }
  }
  return p;
}

std::vector<ColumnProfile> profileTable(const Table& table, int threads) {
  std::vector<ColumnProfile> profiles(table.columnCount());
  parallelFor(table.columnCount(), threads,
              [&](std::size_t c) { profiles[c] = profileColumn(table, c); });
  return profiles;
}

}  // namespace dq
