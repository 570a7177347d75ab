#include "dqforge/key_discovery.hpp"

#include <cmath>
#include <unordered_set>

#include "dqforge/cell.hpp"

namespace dq {

namespace {

const char* kNamePatterns[] = {"id", "code", "key"};

bool nameLooksLikeKey(const std::string& attribute) {
  std::string folded = asciiFold(attribute);
  for (const char* pattern : kNamePatterns) {
    if (folded.find(pattern) != std::string::npos) return true;
  }
  return false;
}

// Length-prefixed, type-tagged concatenation so distinct projections can
// never collide as strings.
void appendCellKey(std::string& key, const Cell& cell) {
  std::string rendered = cell.display();
  char tag = cell.isNumber() ? 'n' : 't';
  key.push_back(tag);
  key.append(std::to_string(rendered.size()));
  key.push_back(':');
  key.append(rendered);
}

bool columnIsRealValued(const Table& table, std::size_t col) {
  bool sawNumber = false;
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    const Cell& cell = table.at(r, col);
    if (!cell.isNumber()) continue;
    sawNumber = true;
    if (std::floor(cell.asNumber()) != cell.asNumber()) return true;
  }
  (void)sawNumber;
  return false;
}

PrimaryKey makeKey(const Table& table, std::vector<std::size_t> columns, double dupRate, std::string method) {
  PrimaryKey key;
  key.columns = std::move(columns);
  for (std::size_t c : key.columns) key.attributes.push_back(table.attributeName(c));
  key.duplicateRate = dupRate;
  key.method = std::move(method);
  return key;
}

}  // namespace

double duplicateRate(const Table& table, const std::vector<std::size_t>& columns) {
  const std::size_t n = table.rowCount();
  if (n == 0) return 0.0;
  std::unordered_set<std::string> seen;
  seen.reserve(n * 2);
  std::size_t present = 0;
  std::string key;
  for (std::size_t r = 0; r < n; ++r) {
    bool hasMissing = false;
    key.clear();
    for (std::size_t c : columns) {
      const Cell& cell = table.at(r, c);
      if (cell.isMissing()) {
        hasMissing = true;
        break;
      }
      appendCellKey(key, cell);
    }
    if (hasMissing) continue;
    ++present;
    seen.insert(key);
  }
  return static_cast<double>(present - seen.size()) / static_cast<double>(n);
}

std::vector<KeyCandidate> findCandidates(const std::vector<ColumnProfile>& profiles, const KeyConfig& config) {
  std::vector<KeyCandidate> out;
  for (std::size_t c = 0; c < profiles.size(); ++c) {
    const ColumnProfile& p = profiles[c];
    if (p.missingRate >= config.missingThreshold) continue;
    KeyCandidate cand;
    cand.column = c;
    cand.attribute = p.attribute;
    cand.missingRate = p.missingRate;
    cand.nameMatch = nameLooksLikeKey(p.attribute);
    out.push_back(cand);
  }
  return out;
}

std::optional<PrimaryKey> tryPatternQuickwin(const Table& table, const std::vector<KeyCandidate>& candidates,
                                             const KeyConfig& config) {
  const KeyCandidate* match = nullptr;
  for (const auto& cand : candidates) {
    if (!cand.nameMatch) continue;
    if (match) return std::nullopt;  // ambiguous, let the search decide
    match = &cand;
  }
  if (!match) return std::nullopt;
  if (columnIsRealValued(table, match->column)) return std::nullopt;
  double rate = duplicateRate(table, {match->column});
  if (rate > config.duplicateThreshold) return std::nullopt;
  return makeKey(table, {match->column}, rate, "pattern");
}

std::optional<PrimaryKey> uniquenessSearch(const Table& table, const std::vector<KeyCandidate>& candidates,
                                           const KeyConfig& config) {
  // Name-matched candidates are tried first at every size.
  std::vector<std::size_t> ordered;
  for (const auto& cand : candidates) {
    if (cand.nameMatch) ordered.push_back(cand.column);
  }
  for (const auto& cand : candidates) {
    if (!cand.nameMatch) ordered.push_back(cand.column);
  }
  const std::size_t m = ordered.size();

  // Advances indices to the next lexicographic combination; false when done.
  auto nextCombination = [m](std::vector<std::size_t>& pick) {
    const std::size_t k = pick.size();
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (pick[i] != i + m - k) {
        ++pick[i];
        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  for (int size = 1; size <= config.maxCombo && static_cast<std::size_t>(size) <= m; ++size) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(size));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    do {
      std::vector<std::size_t> columns;
      columns.reserve(pick.size());
      for (std::size_t i : pick) columns.push_back(ordered[i]);
      double rate = duplicateRate(table, columns);
      if (rate <= config.duplicateThreshold) {
        return makeKey(table, std::move(columns), rate, "search");
      }
    } while (nextCombination(pick));
  }
  return std::nullopt;
}

std::optional<PrimaryKey> discoverPrimaryKey(const Table& table, const std::vector<ColumnProfile>& profiles,
                                             const KeyConfig& config) {
  auto candidates = findCandidates(profiles, config);
  if (candidates.empty()) return std::nullopt;
  if (auto quick = tryPatternQuickwin(table, candidates, config)) return quick;
  return uniquenessSearch(table, candidates, config);
}

}  // namespace dq
