#include "dqforge/missing.hpp"

#include <algorithm>
#include <unordered_set>

namespace dq {

bool isKeyPlaceholder(const std::string& value) {
  return value.rfind(kKeyPlaceholderPrefix, 0) == 0;
}

std::vector<MissingCell> classifyMissing(const Table& table, const std::vector<ColumnProfile>& profiles,
                                         const std::optional<PrimaryKey>& key, double justifiedThreshold) {
  std::vector<bool> isKeyColumn(table.columnCount(), false);
  if (key) {
    for (std::size_t c : key->columns) isKeyColumn[c] = true;
  }
  std::vector<MissingCell> out;
  for (std::size_t c = 0; c < table.columnCount(); ++c) {
    const ColumnProfile& p = profiles[c];
    for (std::size_t r = 0; r < table.rowCount(); ++r) {
      if (!table.at(r, c).isMissing()) continue;
      MissingCell cell;
      cell.row = r;
      cell.col = c;
      if (isKeyColumn[c]) {
        cell.outcome = MissingOutcome::KeyPlaceholder;
      } else if (p.missingRate > justifiedThreshold) {
        cell.outcome = MissingOutcome::JustifiedFieldwide;
      } else if (p.kind == ColumnKind::Numeric) {
        cell.outcome = MissingOutcome::NumericInterpolate;
      } else {
        cell.outcome = MissingOutcome::DeferToLogic;
      }
      out.push_back(cell);
    }
  }
  return out;
}

std::optional<Interpolated> interpolateAt(const std::vector<InterpolationAnchor>& anchors, std::size_t index) {
  if (anchors.empty()) return std::nullopt;
  auto it = std::lower_bound(anchors.begin(), anchors.end(), index,
                             [](const InterpolationAnchor& a, std::size_t i) { return a.index < i; });
  Interpolated result;
  if (it == anchors.begin()) {
    result.value = it->value;
    result.upper = *it;
    return result;
  }
  if (it == anchors.end()) {
    result.value = std::prev(it)->value;
    result.lower = *std::prev(it);
    return result;
  }
  const InterpolationAnchor& hi = *it;
  const InterpolationAnchor& lo = *std::prev(it);
  const double span = static_cast<double>(hi.index - lo.index);
  const double t = static_cast<double>(index - lo.index) / span;
  result.value = lo.value + (hi.value - lo.value) * t;
  result.lower = lo;
  result.upper = hi;
  return result;
}

namespace {

std::string makePlaceholder(const Table& table, std::size_t col, std::int64_t rowId,
                            const std::unordered_set<std::string>& taken) {
  std::string token = std::string(kKeyPlaceholderPrefix) + std::to_string(rowId) + "_" + table.attributeName(col);
  while (taken.count(token)) token += "_x";
  return token;
}

nlohmann::ordered_json anchorJson(const InterpolationAnchor& a) {
  return {{"index", a.index}, {"value", a.value}};
}

}  // namespace

MissingStageResult runMissingStage(Table& table, const std::vector<ColumnProfile>& profiles,
                                   const std::optional<PrimaryKey>& key, std::vector<Finding>& findings,
                                   std::vector<Warning>& warnings, double justifiedThreshold) {
  MissingStageResult result;
  auto cells = classifyMissing(table, profiles, key, justifiedThreshold);

  // Columns flagged as intentionally sparse produce one warning each, not a
  // finding per cell.
  std::unordered_set<std::size_t> justifiedColumns;
  for (const auto& cell : cells) {
    if (cell.outcome == MissingOutcome::JustifiedFieldwide) justifiedColumns.insert(cell.col);
  }
  std::vector<std::size_t> justifiedSorted(justifiedColumns.begin(), justifiedColumns.end());
  std::sort(justifiedSorted.begin(), justifiedSorted.end());
  for (std::size_t c : justifiedSorted) {
    warnings.push_back(Warning{Stage::Missing, table.attributeName(c), "justified_missing",
                               "column is almost entirely empty; treating absence as intended"});
  }

  // Interpolation anchors come from originally present values only; freshly
  // imputed cells never anchor later gaps in the same column.
  std::vector<std::vector<InterpolationAnchor>> anchorsByColumn(table.columnCount());
  std::unordered_set<std::size_t> numericColumns;
  for (const auto& cell : cells) {
    if (cell.outcome == MissingOutcome::NumericInterpolate) numericColumns.insert(cell.col);
  }
  for (std::size_t c : numericColumns) {
    auto& anchors = anchorsByColumn[c];
    for (std::size_t r = 0; r < table.rowCount(); ++r) {
      const Cell& cellValue = table.at(r, c);
      if (cellValue.isNumber()) anchors.push_back(InterpolationAnchor{r, cellValue.asNumber()});
    }
  }

  // Existing text values per key column, to keep placeholder tokens unique.
  std::vector<std::unordered_set<std::string>> takenByColumn(table.columnCount());
  if (key) {
    for (std::size_t c : key->columns) {
      for (std::size_t r = 0; r < table.rowCount(); ++r) {
        const Cell& cellValue = table.at(r, c);
        if (cellValue.isText()) takenByColumn[c].insert(cellValue.asText());
      }
    }
  }

  for (const auto& cell : cells) {
    Finding f;
    f.stage = Stage::Missing;
    f.row = table.rowId(cell.row);
    f.columns = {table.attributeName(cell.col)};
    f.category = Category::Absence;
    f.original = "";

    switch (cell.outcome) {
      case MissingOutcome::JustifiedFieldwide:
        ++result.justified;
        continue;
      case MissingOutcome::KeyPlaceholder: {
        std::string token = makePlaceholder(table, cell.col, table.rowId(cell.row), takenByColumn[cell.col]);
        takenByColumn[cell.col].insert(token);
        table.at(cell.row, cell.col) = Cell::text(token);
        f.corrected = token;
        f.rulePath = {{"action", "key_placeholder"}};
        ++result.placeholders;
        break;
      }
      case MissingOutcome::NumericInterpolate: {
        auto filled = interpolateAt(anchorsByColumn[cell.col], cell.row);
        if (!filled) {
          // No anchors at all; nothing trustworthy to write.
          warnings.push_back(Warning{Stage::Missing, table.attributeName(cell.col), "no_anchor",
                                     "numeric column has no present values to interpolate from"});
          continue;
        }
        table.at(cell.row, cell.col) = Cell::number(filled->value);
        f.corrected = formatNumber(filled->value);
        if (filled->lower && filled->upper) {
          f.rulePath = {{"action", "linear_interpolation"},
                        {"lower", anchorJson(*filled->lower)},
                        {"upper", anchorJson(*filled->upper)},
                        {"index", cell.row}};
        } else {
          f.rulePath = {{"action", "boundary_copy"},
                        {"anchor", anchorJson(filled->lower ? *filled->lower : *filled->upper)},
                        {"index", cell.row}};
        }
        ++result.interpolated;
        break;
      }
      case MissingOutcome::DeferToLogic: {
        f.corrected = std::nullopt;
        f.rulePath = {{"action", "defer_to_logic"}};
        ++result.deferred;
        break;
      }
    }
    findings.push_back(std::move(f));
  }
  return result;
}

}  // namespace dq
