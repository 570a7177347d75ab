#include "dqforge/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "dqforge/rng.hpp"

namespace dq {

std::vector<int> Dendrogram::labelsAtK(std::size_t k) const {
  // Union-find over leaves, replaying merges until k clusters remain.
  std::vector<std::size_t> parent(leaves);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const std::size_t steps = k >= leaves ? 0 : leaves - k;
  for (std::size_t s = 0; s < steps && s < merges.size(); ++s) {
    std::size_t a = find(merges[s].left);
    std::size_t b = find(merges[s].right);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> labels(leaves, -1);
  int next = 0;
  for (std::size_t i = 0; i < leaves; ++i) {
    std::size_t root = find(i);
    if (labels[root] < 0) labels[root] = next++;
    labels[i] = labels[root];
  }
  return labels;
}

Dendrogram averageLinkage(const std::vector<std::vector<double>>& dissimilarity, double maxHeight) {
  const std::size_t g = dissimilarity.size();
  Dendrogram out;
  out.leaves = g;
  if (g < 2) return out;

  // Active cluster bookkeeping: representative = smallest leaf, size, and a
  // mutable inter-cluster distance matrix updated by Lance-Williams.
  std::vector<bool> active(g, true);
  std::vector<std::size_t> size(g, 1);
  std::vector<std::vector<double>> d = dissimilarity;

  for (std::size_t step = 0; step + 1 < g; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = g, bj = g;
    for (std::size_t i = 0; i < g; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < g; ++j) {
        if (!active[j]) continue;
        if (d[i][j] < best) {
          best = d[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == g || best > maxHeight) break;

    out.merges.push_back(Dendrogram::Merge{bi, bj, best});
    // Fold cluster bj into bi (bi < bj keeps the representative minimal).
    const double wi = static_cast<double>(size[bi]);
    const double wj = static_cast<double>(size[bj]);
    for (std::size_t x = 0; x < g; ++x) {
      if (!active[x] || x == bi || x == bj) continue;
      const double merged = (wi * d[bi][x] + wj * d[bj][x]) / (wi + wj);
      d[bi][x] = merged;
      d[x][bi] = merged;
    }
    size[bi] += size[bj];
    active[bj] = false;
  }
  return out;
}

namespace {

// Sum over clusters of (within-cluster pairwise squared distance / cluster
// size), the dispersion the gap statistic works with.
double dispersionAtLabels(const std::vector<std::vector<double>>& sqDist, const std::vector<int>& labels,
                          std::size_t k) {
  std::vector<double> pairSum(k, 0.0);
  std::vector<std::size_t> count(k, 0);
  const std::size_t n = labels.size();
  for (std::size_t i = 0; i < n; ++i) ++count[static_cast<std::size_t>(labels[i])];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (labels[i] == labels[j]) pairSum[static_cast<std::size_t>(labels[i])] += sqDist[i][j];
    }
  }
  double w = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    if (count[c] > 0) w += pairSum[c] / static_cast<double>(count[c]);
  }
  return w;
}

std::vector<std::vector<double>> squaredEuclidean(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < rows[i].size(); ++t) {
        const double diff = rows[i][t] - rows[j][t];
        s += diff * diff;
      }
      out[i][j] = s;
      out[j][i] = s;
    }
  }
  return out;
}

constexpr double kLogFloor = 1e-12;

}  // namespace

std::size_t chooseClusterCountByGap(const std::vector<std::vector<double>>& rowVectors,
                                    const Dendrogram& dataDendrogram, std::size_t kMin, std::size_t kMax,
                                    int refs, std::uint64_t seed) {
  const std::size_t g = rowVectors.size();
  if (g == 0) return 0;
  kMax = std::min(kMax, g);
  kMin = std::max<std::size_t>(kMin, 1);
  if (kMin >= kMax) return kMax;

  const std::size_t dims = rowVectors[0].size();
  auto dataSq = squaredEuclidean(rowVectors);

  // Bounding box of the observed vectors for the null reference.
  std::vector<double> lo(dims, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dims, -std::numeric_limits<double>::infinity());
  for (const auto& row : rowVectors) {
    for (std::size_t t = 0; t < dims; ++t) {
      lo[t] = std::min(lo[t], row[t]);
      hi[t] = std::max(hi[t], row[t]);
    }
  }

  const std::size_t kCount = kMax - kMin + 1;
  std::vector<double> logW(kCount, 0.0);
  std::vector<bool> degenerate(kCount, false);
  for (std::size_t idx = 0; idx < kCount; ++idx) {
    const std::size_t k = kMin + idx;
    auto labels = dataDendrogram.labelsAtK(k);
    const double w = dispersionAtLabels(dataSq, labels, k);
    degenerate[idx] = w <= kLogFloor;
    logW[idx] = std::log(std::max(w, kLogFloor));
  }

  // Reference curves: uniform draws in the box, clustered with the same
  // linkage on their own Euclidean geometry.
  std::mt19937_64 rng = makeRng(seed);
  const int B = std::max(refs, 1);
  std::vector<std::vector<double>> refLogW(kCount);
  for (int b = 0; b < B; ++b) {
    std::vector<std::vector<double>> ref(g, std::vector<double>(dims, 0.0));
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t t = 0; t < dims; ++t) {
        if (hi[t] > lo[t]) {
          std::uniform_real_distribution<double> dist(lo[t], hi[t]);
          ref[i][t] = dist(rng);
        } else {
          ref[i][t] = lo[t];
        }
      }
    }
    auto refSq = squaredEuclidean(ref);
    std::vector<std::vector<double>> refDist(g, std::vector<double>(g, 0.0));
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = 0; j < g; ++j) refDist[i][j] = std::sqrt(refSq[i][j]);
    }
    auto refDendro = averageLinkage(refDist);
    for (std::size_t idx = 0; idx < kCount; ++idx) {
      const std::size_t k = kMin + idx;
      auto labels = refDendro.labelsAtK(k);
      refLogW[idx].push_back(std::log(std::max(dispersionAtLabels(refSq, labels, k), kLogFloor)));
    }
  }

  std::vector<double> gap(kCount, 0.0), sk(kCount, 0.0);
  for (std::size_t idx = 0; idx < kCount; ++idx) {
    double mean = 0.0;
    for (double v : refLogW[idx]) mean += v;
    mean /= static_cast<double>(B);
    double var = 0.0;
    for (double v : refLogW[idx]) var += (v - mean) * (v - mean);
    var /= static_cast<double>(B);
    gap[idx] = mean - logW[idx];
    sk[idx] = std::sqrt(var) * std::sqrt(1.0 + 1.0 / static_cast<double>(B));
  }

  // Candidate ks with informative dispersion, in ascending order.
  std::vector<std::size_t> candidates;
  for (std::size_t idx = 0; idx < kCount; ++idx) {
    if (!degenerate[idx]) candidates.push_back(idx);
  }
  if (candidates.empty()) return kMin;

  for (std::size_t c = 0; c + 1 < candidates.size(); ++c) {
    const std::size_t idx = candidates[c];
    const std::size_t nxt = candidates[c + 1];
    if (gap[idx] >= gap[nxt] - sk[nxt]) return kMin + idx;
  }
  return kMin + candidates.back();
}

}  // namespace dq
