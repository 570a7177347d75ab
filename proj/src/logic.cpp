#include "dqforge/logic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dqforge/error.hpp"

namespace dq {
namespace {

// Three ids packed into 21-bit lanes; plenty for any realistic vocabulary.
constexpr int kIdBits = 21;
constexpr std::size_t kMaxItems = std::size_t{1} << kIdBits;

std::uint64_t packKey(const std::vector<int>& items) {
  std::uint64_t key = 0;
  for (int id : items) key = (key << kIdBits) | static_cast<std::uint64_t>(id + 1);
  return key;
}

std::uint64_t packKey3(int a, int b, int c) {
  std::uint64_t key = static_cast<std::uint64_t>(a + 1);
  if (b >= 0) key = (key << kIdBits) | static_cast<std::uint64_t>(b + 1);
  if (c >= 0) key = (key << kIdBits) | static_cast<std::uint64_t>(c + 1);
  return key;
}

std::string renderValue(const Cell& cell) {
  if (cell.isMissing()) return kAbsenceMarker;
  return cell.display();
}

// Type-tagged so the text "5" and the number 5 stay distinct items.
std::string itemKey(const Cell& cell) {
  if (cell.isMissing()) return "m";
  if (cell.isNumber()) return "n:" + cell.display();
  return "t:" + cell.display();
}

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool expired() const { return std::chrono::steady_clock::now() >= at; }
};

}  // namespace

std::string ItemCatalog::describe(std::size_t id, const Table& table) const {
  const Item& item = items.at(id);
  return table.attributes().at(item.col) + "=" + item.render;
}

EncodedTransactions encodeRecords(const Table& table, const std::vector<std::size_t>& logicColumns) {
  EncodedTransactions encoded;
  encoded.columns = logicColumns;
  encoded.rows.assign(table.rowCount(), std::vector<int>(logicColumns.size(), -1));

  for (std::size_t pos = 0; pos < logicColumns.size(); ++pos) {
    const std::size_t col = logicColumns[pos];
    // Distinct values sorted by their tagged key so ids are stable.
    std::map<std::string, Cell> distinct;
    for (std::size_t r = 0; r < table.rowCount(); ++r) {
      const Cell& cell = table.at(r, col);
      distinct.emplace(itemKey(cell), cell);
    }
    std::unordered_map<std::string, int> idOf;
    idOf.reserve(distinct.size() * 2);
    for (const auto& [key, cell] : distinct) {
      if (encoded.catalog.items.size() >= kMaxItems) throw ConfigError("logic stage: too many distinct values");
      idOf.emplace(key, static_cast<int>(encoded.catalog.items.size()));
      encoded.catalog.items.push_back({col, cell, renderValue(cell)});
    }
    for (std::size_t r = 0; r < table.rowCount(); ++r) {
      encoded.rows[r][pos] = idOf.at(itemKey(table.at(r, col)));
    }
  }
  return encoded;
}

AprioriResult apriori(const EncodedTransactions& encoded, const LogicConfig& config) {
  AprioriResult result;
  result.transactionCount = encoded.rows.size();
  const std::size_t n = encoded.rows.size();
  if (n == 0 || encoded.columns.empty()) return result;

  const auto deadline = Deadline{std::chrono::steady_clock::now() +
                                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>(config.timeoutSeconds))};

  const std::size_t minCount =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(config.minSupport * static_cast<double>(n) - 1e-9)));
  const std::size_t width = encoded.columns.size();
  const int maxSize = std::min<int>(config.maxItemsetSize, static_cast<int>(width));

  // Level 1 by direct tally.
  std::vector<std::size_t> tally(encoded.catalog.items.size(), 0);
  for (const auto& row : encoded.rows)
    for (int id : row) ++tally[static_cast<std::size_t>(id)];

  std::vector<Itemset> frequent;
  for (std::size_t id = 0; id < tally.size(); ++id) {
    if (tally[id] >= minCount) frequent.push_back({{static_cast<int>(id)}, tally[id]});
  }
  if (frequent.empty() || maxSize < 1) return result;
  result.levels.push_back(frequent);

  for (int k = 2; k <= maxSize; ++k) {
    if (deadline.expired()) {
      result.timedOut = true;
      return result;
    }
    const std::vector<Itemset>& prev = result.levels.back();

    // Join on shared (k-2)-prefix, then prune candidates with an infrequent subset.
    std::unordered_set<std::uint64_t> prevKeys;
    prevKeys.reserve(prev.size() * 2);
    for (const Itemset& s : prev) prevKeys.insert(packKey(s.items));

    std::vector<std::vector<int>> candidates;
    std::unordered_map<std::uint64_t, std::size_t> candidateIndex;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::size_t j = i + 1; j < prev.size(); ++j) {
        if (!std::equal(prev[i].items.begin(), prev[i].items.end() - 1, prev[j].items.begin())) break;
        std::vector<int> cand = prev[i].items;
        cand.push_back(prev[j].items.back());
        bool keep = true;
        if (k > 2) {
          std::vector<int> sub(cand.size() - 1);
          for (std::size_t drop = 0; keep && drop + 2 < cand.size(); ++drop) {
            std::size_t w = 0;
            for (std::size_t p = 0; p < cand.size(); ++p)
              if (p != drop) sub[w++] = cand[p];
            keep = prevKeys.count(packKey(sub)) > 0;
          }
        }
        if (keep) {
          candidateIndex.emplace(packKey(cand), candidates.size());
          candidates.push_back(std::move(cand));
        }
      }
    }
    if (candidates.empty()) break;

    std::vector<std::size_t> counts(candidates.size(), 0);
    std::size_t processed = 0;
    for (const auto& row : encoded.rows) {
      if ((++processed & 0xFFF) == 0 && deadline.expired()) {
        result.timedOut = true;
        return result;
      }
      if (k == 2) {
        for (std::size_t a = 0; a < width; ++a) {
          for (std::size_t b = a + 1; b < width; ++b) {
            int x = row[a], y = row[b];
            if (x > y) std::swap(x, y);
            auto it = candidateIndex.find(packKey3(x, y, -1));
            if (it != candidateIndex.end()) ++counts[it->second];
          }
        }
      } else {
        for (std::size_t a = 0; a < width; ++a) {
          for (std::size_t b = a + 1; b < width; ++b) {
            for (std::size_t c = b + 1; c < width; ++c) {
              int ids[3] = {row[a], row[b], row[c]};
              std::sort(ids, ids + 3);
              auto it = candidateIndex.find(packKey3(ids[0], ids[1], ids[2]));
              if (it != candidateIndex.end()) ++counts[it->second];
            }
          }
        }
      }
    }

    std::vector<Itemset> next;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (counts[i] >= minCount) next.push_back({candidates[i], counts[i]});
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end(), [](const Itemset& a, const Itemset& b) { return a.items < b.items; });
    result.levels.push_back(std::move(next));
  }
  return result;
}

std::string AssociationRule::describe(const EncodedTransactions& encoded, const Table& table) const {
  std::string out = "{";
  for (std::size_t i = 0; i < antecedent.size(); ++i) {
    if (i) out += ", ";
    out += encoded.catalog.describe(static_cast<std::size_t>(antecedent[i]), table);
  }
  out += "} => {";
  for (std::size_t i = 0; i < consequent.size(); ++i) {
    if (i) out += ", ";
    out += encoded.catalog.describe(static_cast<std::size_t>(consequent[i]), table);
  }
  out += "}";
  return out;
}

std::vector<AssociationRule> deriveRules(const AprioriResult& result, const LogicConfig& config) {
  std::vector<AssociationRule> rules;
  if (result.levels.size() < 2 || result.transactionCount == 0) return rules;

  // Support lookup across all levels for antecedent counts.
  std::unordered_map<std::uint64_t, std::size_t> supportOf;
  for (const auto& level : result.levels)
    for (const Itemset& s : level) supportOf.emplace(packKey(s.items), s.supportCount);

  const double n = static_cast<double>(result.transactionCount);
  for (std::size_t levelIdx = 1; levelIdx < result.levels.size(); ++levelIdx) {
    for (const Itemset& set : result.levels[levelIdx]) {
      const std::size_t size = set.items.size();
      const unsigned full = (1u << size) - 1u;
      for (unsigned mask = 1; mask < full; ++mask) {
        std::vector<int> ant, cons;
        for (std::size_t p = 0; p < size; ++p) {
          if (mask & (1u << p))
            ant.push_back(set.items[p]);
          else
            cons.push_back(set.items[p]);
        }
        auto it = supportOf.find(packKey(ant));
        if (it == supportOf.end()) continue;  // cannot happen for frequent sets
        const std::size_t antCount = it->second;
        const double confidence = static_cast<double>(set.supportCount) / static_cast<double>(antCount);
        if (static_cast<double>(set.supportCount) + 1e-9 < config.minConfidence * static_cast<double>(antCount))
          continue;
        AssociationRule rule;
        rule.antecedent = std::move(ant);
        rule.consequent = std::move(cons);
        rule.antecedentCount = antCount;
        rule.ruleCount = set.supportCount;
        rule.support = static_cast<double>(set.supportCount) / n;
        rule.confidence = confidence;
        rules.push_back(std::move(rule));
      }
    }
  }
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.ruleCount != b.ruleCount) return a.ruleCount > b.ruleCount;
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return rules;
}

std::vector<AssociationRule> selectViolableRules(const std::vector<AssociationRule>& rules, double minConfidence) {
  std::vector<AssociationRule> out;
  for (const AssociationRule& rule : rules) {
    if (rule.ruleCount >= rule.antecedentCount) continue;  // holds universally
    if (static_cast<double>(rule.ruleCount) + 1e-9 < minConfidence * static_cast<double>(rule.antecedentCount))
      continue;
    out.push_back(rule);
  }
  return out;
}

namespace {

struct CellProposal {
  std::size_t ruleIndex;
  int itemId;  // proposed replacement value
};

nlohmann::ordered_json ruleJson(const AssociationRule& rule, const EncodedTransactions& encoded, const Table& table) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json ant = nlohmann::ordered_json::array();
  for (int id : rule.antecedent) ant.push_back(encoded.catalog.describe(static_cast<std::size_t>(id), table));
  nlohmann::ordered_json cons = nlohmann::ordered_json::array();
  for (int id : rule.consequent) cons.push_back(encoded.catalog.describe(static_cast<std::size_t>(id), table));
  j["antecedent"] = std::move(ant);
  j["consequent"] = std::move(cons);
  j["support"] = rule.support;
  j["confidence"] = rule.confidence;
  j["violations"] = rule.antecedentCount - rule.ruleCount;
  return j;
}

}  // namespace

LogicStageResult runLogicStage(Table& table, const ProcessPlan& plan, const LogicConfig& config,
                               std::vector<Finding>& findings, std::vector<Warning>& warnings) {
  LogicStageResult stats;
  if (plan.logicColumns.empty() || table.rowCount() == 0) return stats;

  EncodedTransactions encoded = encodeRecords(table, plan.logicColumns);
  AprioriResult mined = apriori(encoded, config);
  if (mined.timedOut) {
    stats.timedOut = true;
    warnings.push_back({Stage::Logic, "table", "logic_timeout",
                        "rule mining exceeded the time budget; logic checks skipped"});
    return stats;
  }
  for (const auto& level : mined.levels) stats.frequentItemsets += level.size();

  const std::vector<AssociationRule> rules = deriveRules(mined, config);
  stats.rulesMined = rules.size();
  const std::vector<AssociationRule> violable = selectViolableRules(rules, config.minConfidence);
  stats.violableRules = violable.size();
  if (violable.empty()) return stats;

  // Column position lookup within the encoded transaction layout.
  std::unordered_map<std::size_t, std::size_t> posOfCol;
  for (std::size_t pos = 0; pos < encoded.columns.size(); ++pos) posOfCol.emplace(encoded.columns[pos], pos);

  // Proposals for single-value consequents, keyed by cell; multi-value
  // consequents only flag since there is no unambiguous repair.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<CellProposal>> proposals;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> flagRules;

  for (std::size_t ruleIdx = 0; ruleIdx < violable.size(); ++ruleIdx) {
    const AssociationRule& rule = violable[ruleIdx];
    for (std::size_t r = 0; r < table.rowCount(); ++r) {
      const std::vector<int>& row = encoded.rows[r];
      bool antecedentHolds = true;
      for (int id : rule.antecedent) {
        const std::size_t pos = posOfCol.at(encoded.catalog.items[static_cast<std::size_t>(id)].col);
        if (row[pos] != id) {
          antecedentHolds = false;
          break;
        }
      }
      if (!antecedentHolds) continue;
      bool consequentHolds = true;
      for (int id : rule.consequent) {
        const std::size_t pos = posOfCol.at(encoded.catalog.items[static_cast<std::size_t>(id)].col);
        if (row[pos] != id) {
          consequentHolds = false;
          break;
        }
      }
      if (consequentHolds) continue;

      if (rule.consequent.size() == 1) {
        const int id = rule.consequent.front();
        const std::size_t col = encoded.catalog.items[static_cast<std::size_t>(id)].col;
        proposals[{r, col}].push_back({ruleIdx, id});
      } else {
        for (int id : rule.consequent) {
          const std::size_t pos = posOfCol.at(encoded.catalog.items[static_cast<std::size_t>(id)].col);
          if (row[pos] != id) flagRules[{r, encoded.catalog.items[static_cast<std::size_t>(id)].col}].push_back(ruleIdx);
        }
      }
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> touched;
  for (const auto& [cellKey, cellProposals] : proposals) {
    const auto [row, col] = cellKey;
    touched.insert(cellKey);

    bool agreed = true;
    for (const CellProposal& p : cellProposals) {
      if (p.itemId != cellProposals.front().itemId) {
        agreed = false;
        break;
      }
    }

    const Cell& current = table.at(row, col);
    nlohmann::ordered_json rulesEvidence = nlohmann::ordered_json::array();
    for (const CellProposal& p : cellProposals) rulesEvidence.push_back(ruleJson(violable[p.ruleIndex], encoded, table));

    Finding f;
    f.stage = Stage::Logic;
    f.row = table.rowId(row);
    f.columns = {table.attributes()[col]};
    f.category = Category::Logic;
    f.original = current.isMissing() ? std::string(kAbsenceMarker) : current.display();

    const ItemCatalog::Item& proposed = encoded.catalog.items[static_cast<std::size_t>(cellProposals.front().itemId)];
    if (agreed && !proposed.value.isMissing()) {
      f.corrected = proposed.render;
      f.rulePath = {{"action", "rule_correction"}, {"rules", rulesEvidence}};
      findings.push_back(std::move(f));
      table.at(row, col) = proposed.value;
      ++stats.correctedCells;
    } else if (agreed) {
      // Rules proposing absence only flag: blanking a present value would
      // destroy data on statistical evidence alone.
      f.rulePath = {{"action", "rule_flag"}, {"reason", "proposed_value_is_absent"}, {"rules", rulesEvidence}};
      findings.push_back(std::move(f));
    } else {
      f.rulePath = {{"action", "rule_conflict"}, {"rules", rulesEvidence}};
      findings.push_back(std::move(f));
      warnings.push_back({Stage::Logic, table.attributes()[col], "conflicting_rules",
                          "row " + std::to_string(table.rowId(row)) + ": rules disagree on the replacement; cell flagged only"});
    }
  }

  for (const auto& [cellKey, ruleIdxs] : flagRules) {
    const auto [row, col] = cellKey;
    if (touched.count(cellKey)) continue;  // already handled via a single-value rule
    touched.insert(cellKey);
    const Cell& current = table.at(row, col);
    nlohmann::ordered_json rulesEvidence = nlohmann::ordered_json::array();
    for (std::size_t idx : ruleIdxs) rulesEvidence.push_back(ruleJson(violable[idx], encoded, table));
    Finding f;
    f.stage = Stage::Logic;
    f.row = table.rowId(row);
    f.columns = {table.attributes()[col]};
    f.category = Category::Logic;
    f.original = current.isMissing() ? std::string(kAbsenceMarker) : current.display();
    f.rulePath = {{"action", "rule_flag"}, {"reason", "composite_consequent"}, {"rules", rulesEvidence}};
    findings.push_back(std::move(f));
  }
  stats.flaggedCells = touched.size();
  return stats;
}

}  // namespace dq
