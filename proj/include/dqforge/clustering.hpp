#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace dq {

// Agglomerative clustering with average linkage over a precomputed symmetric
// dissimilarity matrix. Merges are recorded in order so the tree can be cut
// at any cluster count afterwards.
struct Dendrogram {
  std::size_t leaves = 0;
  struct Merge {
    std::size_t left = 0;   // smallest leaf index of each side
    std::size_t right = 0;
    double height = 0.0;    // average linkage distance at merge time
  };
  std::vector<Merge> merges;

  // Labels 0..k-1 after applying the first (leaves - k) merges; labels are
  // numbered by first appearance in leaf order. k must be >= leaves - merges.
  std::vector<int> labelsAtK(std::size_t k) const;
};

// maxHeight bounds how far agglomeration may proceed: cluster pairs whose
// average distance exceeds it are never merged, which leaves the dendrogram
// truncated at leaves - merges.size() clusters.
Dendrogram averageLinkage(const std::vector<std::vector<double>>& dissimilarity,
                          double maxHeight = std::numeric_limits<double>::infinity());

// Gap-statistic choice of cluster count. Within-cluster dispersion of the
// data (as row vectors) is compared against `refs` uniform samples drawn in
// the bounding box of those vectors, each clustered the same way on plain
// Euclidean distances. Selection uses the one-standard-error rule: the
// smallest k whose gap is no worse than the next k's gap minus its error.
// Cluster counts whose dispersion collapses to zero carry no information and
// are skipped unless nothing else remains.
std::size_t chooseClusterCountByGap(const std::vector<std::vector<double>>& rowVectors,
                                    const Dendrogram& dataDendrogram, std::size_t kMin, std::size_t kMax,
                                    int refs, std::uint64_t seed);

}  // namespace dq
