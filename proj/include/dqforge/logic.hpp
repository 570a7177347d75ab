#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqforge/finding.hpp"
#include "dqforge/process_map.hpp"
#include "dqforge/table.hpp"

namespace dq {

struct LogicConfig {
  double minSupport = 0.0033;
  double minConfidence = 0.99;
  int maxItemsetSize = 3;
  double timeoutSeconds = 3600.0;
};

// Items are (column, value) pairs; a missing cell is a first-class item so
// that rules can reason about absence. Ids are dense and deterministic:
// columns in plan order, values in sorted render order.
struct ItemCatalog {
  struct Item {
    std::size_t col = 0;
    Cell value;          // missing cell for the absence item
    std::string render;  // "value" or the absence marker
  };
  std::vector<Item> items;

  std::string describe(std::size_t id, const Table& table) const;
};

inline constexpr const char* kAbsenceMarker = "(missing)";

// One row becomes one item per logic column, in plan order.
struct EncodedTransactions {
  ItemCatalog catalog;
  std::vector<std::size_t> columns;
  std::vector<std::vector<int>> rows;  // rows x columns, item ids
};

EncodedTransactions encodeRecords(const Table& table, const std::vector<std::size_t>& logicColumns);

struct Itemset {
  std::vector<int> items;  // ascending ids
  std::size_t supportCount = 0;
};

struct AprioriResult {
  std::vector<std::vector<Itemset>> levels;  // levels[k-1]: frequent k-itemsets
  std::size_t transactionCount = 0;
  bool timedOut = false;
};

// Level-wise search: candidates are joined from the previous level on a
// shared prefix and pruned unless every subset is frequent. Counting stops
// and flags a timeout when the deadline passes.
AprioriResult apriori(const EncodedTransactions& encoded, const LogicConfig& config);

struct AssociationRule {
  std::vector<int> antecedent;
  std::vector<int> consequent;
  std::size_t antecedentCount = 0;
  std::size_t ruleCount = 0;  // support count of antecedent + consequent
  double support = 0.0;
  double confidence = 0.0;

  std::string describe(const EncodedTransactions& encoded, const Table& table) const;
};

// All rules meeting the confidence floor, in deterministic order: support
// descending, confidence descending, then item ids.
std::vector<AssociationRule> deriveRules(const AprioriResult& result, const LogicConfig& config);

// Rules that hold almost always but not always; universally true rules
// cannot be violated and are dropped.
std::vector<AssociationRule> selectViolableRules(const std::vector<AssociationRule>& rules, double minConfidence);

struct LogicStageResult {
  std::size_t frequentItemsets = 0;
  std::size_t rulesMined = 0;
  std::size_t violableRules = 0;
  std::size_t flaggedCells = 0;
  std::size_t correctedCells = 0;
  bool timedOut = false;
};

LogicStageResult runLogicStage(Table& table, const ProcessPlan& plan, const LogicConfig& config,
                               std::vector<Finding>& findings, std::vector<Warning>& warnings);

}  // namespace dq
