#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "dqforge/finding.hpp"
#include "dqforge/process_map.hpp"
#include "dqforge/table.hpp"

namespace dq {

struct ValueCount {
  std::string value;
  std::size_t count = 0;
};

// A run of spelling variants believed to denote one real-world value. The
// dominant is the most frequent member (ties resolved lexicographically,
// case-folded first) and is what variants are rewritten to.
struct SimilarityGroup {
  std::vector<ValueCount> members;
  std::size_t dominantIndex = 0;

  const std::string& dominant() const { return members[dominantIndex].value; }
  std::size_t dominantCount() const { return members[dominantIndex].count; }
};

void electDominant(SimilarityGroup& group);

// Sorts the unique values case-insensitively and starts a new group whenever
// the similarity between neighbours drops below `threshold`. Similarity is
// case-insensitive; stored values keep their original casing.
std::vector<SimilarityGroup> groupBySortedJumps(std::vector<ValueCount> values, double threshold);

struct TypoConfig {
  double threshold = 0.7;              // similarity jump and merge scale
  int gapRefs = 10;                    // reference draws for the gap statistic
  std::size_t maxClusterDominants = 256;
  std::uint64_t seed = 0;
  const std::unordered_set<std::string>* dictionary = nullptr;  // case-folded entries
};

struct ClusterOutcome {
  std::vector<SimilarityGroup> groups;
  std::size_t dominants = 0;        // group count before merging
  std::size_t clustersChosen = 0;   // 0 when clustering did not run
  bool skippedTooMany = false;
};

// Second chance for variants that sorted far from their word (a wrong first
// letter, say): dominants are compared all-to-all and near ones are merged.
// Only dominants within the similarity scale may merge; the cluster count
// within that bound is chosen by the gap statistic.
ClusterOutcome clusterDominants(std::vector<SimilarityGroup> groups, const TypoConfig& config,
                                const std::string& attribute);

struct TypoCorrectionSet {
  std::map<std::string, std::string> mapping;  // exact variant -> dominant
  struct Reconciled {
    std::string value;
    std::string dominant;
    bool splitOut = false;  // true when a dictionary confirmed it as a word
  };
  std::vector<Reconciled> reconciled;
};

// Members nearly as frequent as their dominant are probably real words, not
// typos: they are exempted from rewriting and flagged for review. With a
// dictionary, confirmed entries additionally leave the group entirely.
TypoCorrectionSet buildCorrections(const std::vector<SimilarityGroup>& groups, const TypoConfig& config);

struct TypoStageResult {
  std::size_t correctedCells = 0;
  std::size_t groupsBuilt = 0;
  std::size_t groupsAfterClustering = 0;
};

TypoStageResult runTypoStage(Table& table, const ProcessPlan& plan, const TypoConfig& config,
                             std::vector<Finding>& findings, std::vector<Warning>& warnings, int threads = 0);

// One entry per line, case-folded for membership tests; blank lines skipped.
std::unordered_set<std::string> loadDictionaryFile(const std::string& path);

}  // namespace dq
