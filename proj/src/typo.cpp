#include "dqforge/typo.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "dqforge/cell.hpp"
#include "dqforge/error.hpp"
#include "dqforge/clustering.hpp"
#include "dqforge/edit_distance.hpp"
#include "dqforge/missing.hpp"
#include "dqforge/parallel.hpp"
#include "dqforge/rng.hpp"

namespace dq {

void electDominant(SimilarityGroup& group) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < group.members.size(); ++i) {
    const ValueCount& a = group.members[i];
    const ValueCount& b = group.members[best];
    if (a.count > b.count) {
      best = i;
    } else if (a.count == b.count) {
      const std::string fa = asciiFold(a.value), fb = asciiFold(b.value);
      if (fa < fb || (fa == fb && a.value < b.value)) best = i;
    }
  }
  group.dominantIndex = best;
}

std::vector<SimilarityGroup> groupBySortedJumps(std::vector<ValueCount> values, double threshold) {
  std::sort(values.begin(), values.end(), [](const ValueCount& a, const ValueCount& b) {
    const std::string fa = asciiFold(a.value), fb = asciiFold(b.value);
    if (fa != fb) return fa < fb;
    return a.value < b.value;
  });

  std::vector<SimilarityGroup> groups;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool startNew = groups.empty();
    if (!startNew) {
      const std::string& prev = groups.back().members.back().value;
      if (dls(asciiFold(prev), asciiFold(values[i].value)) < threshold) startNew = true;
    }
    if (startNew) groups.emplace_back();
    groups.back().members.push_back(std::move(values[i]));
  }
  for (auto& g : groups) electDominant(g);
  return groups;
}

ClusterOutcome clusterDominants(std::vector<SimilarityGroup> groups, const TypoConfig& config,
                                const std::string& attribute) {
  ClusterOutcome out;
  out.dominants = groups.size();
  const std::size_t g = groups.size();
  if (g < 2) {
    out.groups = std::move(groups);
    return out;
  }
  if (g > config.maxClusterDominants) {
    out.skippedTooMany = true;
    out.groups = std::move(groups);
    return out;
  }

  std::vector<std::string> folded(g);
  for (std::size_t i = 0; i < g; ++i) folded[i] = asciiFold(groups[i].dominant());

  // Pairwise similarity matrix; its rows double as the feature vectors the
  // gap statistic inspects.
  std::vector<std::vector<double>> sim(g, std::vector<double>(g, 1.0));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i + 1; j < g; ++j) {
      const double s = dls(folded[i], folded[j]);
      sim[i][j] = s;
      sim[j][i] = s;
    }
  }
  std::vector<std::vector<double>> dist(g, std::vector<double>(g, 0.0));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) dist[i][j] = 1.0 - sim[i][j];
  }

  // Dominants further apart than the similarity scale never merge; the word
  // boundary that split neighbouring groups applies here too.
  const double maxHeight = 1.0 - config.threshold;
  Dendrogram dendro = averageLinkage(dist, maxHeight);
  const std::size_t kFloor = g - dendro.merges.size();
  std::size_t k = g;
  if (kFloor < g) {
    const std::uint64_t seed = deriveSeed(config.seed, "typos.gap", attribute);
    k = chooseClusterCountByGap(sim, dendro, kFloor, g, config.gapRefs, seed);
  }
  out.clustersChosen = k;
  if (k >= g) {
    out.groups = std::move(groups);
    return out;
  }

  auto labels = dendro.labelsAtK(k);
  std::vector<SimilarityGroup> merged(k);
  for (std::size_t i = 0; i < g; ++i) {
    auto& target = merged[static_cast<std::size_t>(labels[i])];
    for (auto& member : groups[i].members) target.members.push_back(std::move(member));
  }
  for (auto& group : merged) electDominant(group);
  out.groups = std::move(merged);
  return out;
}

TypoCorrectionSet buildCorrections(const std::vector<SimilarityGroup>& groups, const TypoConfig& config) {
  TypoCorrectionSet out;
  for (const auto& group : groups) {
    const std::string& dominant = group.dominant();
    const std::size_t dominantCount = group.dominantCount();
    for (std::size_t i = 0; i < group.members.size(); ++i) {
      if (i == group.dominantIndex) continue;
      const ValueCount& member = group.members[i];
      if (member.count * 2 > dominantCount) {
        // Too frequent to dismiss as a typo; leave the cells alone.
        TypoCorrectionSet::Reconciled rec;
        rec.value = member.value;
        rec.dominant = dominant;
        rec.splitOut = config.dictionary && config.dictionary->count(asciiFold(member.value)) > 0;
        out.reconciled.push_back(std::move(rec));
        continue;
      }
      if (member.value != dominant) out.mapping[member.value] = dominant;
    }
  }
  return out;
}

namespace {

struct ColumnPlanResult {
  std::size_t col = 0;
  TypoCorrectionSet corrections;
  std::size_t groupsBuilt = 0;
  std::size_t groupsAfterClustering = 0;
  bool clusteringSkipped = false;
  // Evidence per variant for findings.
  struct VariantInfo {
    std::string dominant;
    double similarity = 0.0;
    std::size_t variantCount = 0;
    std::size_t dominantCount = 0;
  };
  std::unordered_map<std::string, VariantInfo> info;
};

ColumnPlanResult planColumn(const Table& table, std::size_t col, const TypoConfig& config) {
  ColumnPlanResult result;
  result.col = col;

  std::unordered_map<std::string, std::size_t> counts;
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    const Cell& cell = table.at(r, col);
    if (!cell.isText()) continue;
    if (isKeyPlaceholder(cell.asText())) continue;
    ++counts[cell.asText()];
  }
  std::vector<ValueCount> values;
  values.reserve(counts.size());
  for (auto& [value, count] : counts) values.push_back(ValueCount{value, count});

  auto groups = groupBySortedJumps(std::move(values), config.threshold);
  result.groupsBuilt = groups.size();
  auto clustered = clusterDominants(std::move(groups), config, table.attributeName(col));
  result.groupsAfterClustering = clustered.groups.size();
  result.clusteringSkipped = clustered.skippedTooMany;
  result.corrections = buildCorrections(clustered.groups, config);

  for (const auto& group : clustered.groups) {
    for (std::size_t i = 0; i < group.members.size(); ++i) {
      if (i == group.dominantIndex) continue;
      const ValueCount& member = group.members[i];
      ColumnPlanResult::VariantInfo info;
      info.dominant = group.dominant();
      info.similarity = dls(asciiFold(member.value), asciiFold(group.dominant()));
      info.variantCount = member.count;
      info.dominantCount = group.dominantCount();
      result.info.emplace(member.value, std::move(info));
    }
  }
  return result;
}

}  // namespace

TypoStageResult runTypoStage(Table& table, const ProcessPlan& plan, const TypoConfig& config,
                             std::vector<Finding>& findings, std::vector<Warning>& warnings, int threads) {
  TypoStageResult result;
  std::vector<ColumnPlanResult> columns(plan.typoColumns.size());
  parallelFor(plan.typoColumns.size(), threads, [&](std::size_t i) {
    columns[i] = planColumn(table, plan.typoColumns[i], config);
  });

  for (auto& colResult : columns) {
    const std::size_t col = colResult.col;
    const std::string attr = table.attributeName(col);
    result.groupsBuilt += colResult.groupsBuilt;
    result.groupsAfterClustering += colResult.groupsAfterClustering;

    if (colResult.clusteringSkipped) {
      warnings.push_back(Warning{Stage::Typos, attr, "cluster_skipped",
                                 "too many distinct values to cross-compare; kept sorted grouping only"});
    }
    for (const auto& rec : colResult.corrections.reconciled) {
      warnings.push_back(Warning{Stage::Typos, attr, rec.splitOut ? "reconciled_dictionary_word" : "review_variant",
                                 "'" + rec.value + "' is frequent enough to be a real value near '" +
                                     rec.dominant + "'; left unchanged"});
    }
    if (colResult.corrections.mapping.empty()) continue;

    for (std::size_t r = 0; r < table.rowCount(); ++r) {
      Cell& cell = table.at(r, col);
      if (!cell.isText()) continue;
      auto it = colResult.corrections.mapping.find(cell.asText());
      if (it == colResult.corrections.mapping.end()) continue;
      const auto& info = colResult.info.at(it->first);
      Finding f;
      f.stage = Stage::Typos;
      f.row = table.rowId(r);
      f.columns = {attr};
      f.category = Category::Typographical;
      f.original = it->first;
      f.corrected = it->second;
      f.rulePath = {{"action", "replace_variant"},
                    {"dominant", info.dominant},
                    {"similarity", info.similarity},
                    {"variant_count", info.variantCount},
                    {"dominant_count", info.dominantCount}};
      findings.push_back(std::move(f));
      cell = Cell::text(it->second);
      ++result.correctedCells;
    }
  }
  return result;
}

std::unordered_set<std::string> loadDictionaryFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dictionary file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    words.insert(asciiFold(line));
  }
  return words;
}

}  // namespace dq
