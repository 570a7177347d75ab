#include "dqforge/isolation_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dqforge/rng.hpp"

namespace dq {

namespace {

constexpr double kEulerGamma = 0.5772156649015329;

std::size_t heightCap(std::size_t m) {
  std::size_t cap = 0;
  std::size_t v = 1;
  while (v < m) {
    v <<= 1;
    ++cap;
  }
  return cap;  // ceil(log2 m)
}

}  // namespace

double IsolationForest1D::averagePathCorrection(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  const double nd = static_cast<double>(n);
  return 2.0 * (std::log(nd - 1.0) + kEulerGamma) - 2.0 * (nd - 1.0) / nd;
}

IsolationForest1D::IsolationForest1D(const std::vector<double>& values, const Config& config, std::uint64_t seed)
    : config_(config) {
  const std::size_t n = values.size();
  sampleSize_ = std::min<std::size_t>(config.subsample, n);
  normalizer_ = averagePathCorrection(sampleSize_);
  if (n == 0 || config.trees <= 0) return;
  const std::size_t cap = heightCap(sampleSize_);

  std::mt19937_64 rng = makeRng(seed);
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  std::vector<double> sample(sampleSize_);

  trees_.reserve(static_cast<std::size_t>(config.trees));
  for (int t = 0; t < config.trees; ++t) {
    // Partial Fisher-Yates draw without replacement.
    for (std::size_t i = 0; i < sampleSize_; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(indices[i], indices[pick(rng)]);
      sample[i] = values[indices[i]];
    }

    Tree tree;
    // Explicit work stack: (begin, end) into `sample`, depth, parent slot.
    struct Item {
      std::size_t begin, end, depth;
      int parent;    // node index to patch, -1 for root
      bool isLeft;
    };
    std::vector<Item> stack;
    stack.push_back({0, sampleSize_, 0, -1, false});
    while (!stack.empty()) {
      Item item = stack.back();
      stack.pop_back();
      const std::size_t count = item.end - item.begin;
      auto lohi = std::minmax_element(sample.begin() + item.begin, sample.begin() + item.end);
      const double lo = *lohi.first;
      const double hi = *lohi.second;

      int nodeIndex = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      if (item.parent >= 0) {
        if (item.isLeft) tree.nodes[item.parent].left = nodeIndex;
        else tree.nodes[item.parent].right = nodeIndex;
      }

      if (count <= 1 || item.depth >= cap || lo == hi) {
        tree.nodes[nodeIndex].leafSize = static_cast<std::uint32_t>(count);
        continue;
      }

      std::uniform_real_distribution<double> splitDist(lo, hi);
      double split = splitDist(rng);
      if (split <= lo) split = std::nextafter(lo, hi);

      auto mid = std::partition(sample.begin() + item.begin, sample.begin() + item.end,
                                [split](double v) { return v < split; });
      const std::size_t splitAt = static_cast<std::size_t>(mid - sample.begin());
      tree.nodes[nodeIndex].split = split;
      tree.nodes[nodeIndex].left = -2;  // patched by children
      tree.nodes[nodeIndex].right = -2;
      stack.push_back({item.begin, splitAt, item.depth + 1, nodeIndex, true});
      stack.push_back({splitAt, item.end, item.depth + 1, nodeIndex, false});
    }
    trees_.push_back(std::move(tree));
  }
}

double IsolationForest1D::pathLength(const Tree& tree, double x) const {
  if (tree.nodes.empty()) return 0.0;
  std::size_t node = 0;
  double depth = 0.0;
  while (true) {
    const Node& n = tree.nodes[node];
    if (n.left < 0) return depth + averagePathCorrection(n.leafSize);
    node = static_cast<std::size_t>(x < n.split ? n.left : n.right);
    depth += 1.0;
  }
}

double IsolationForest1D::averagePathLength(double x) const {
  if (trees_.empty()) return 0.0;
  double total = 0.0;
  for (const auto& tree : trees_) total += pathLength(tree, x);
  return total / static_cast<double>(trees_.size());
}

double IsolationForest1D::score(double x) const {
  if (normalizer_ <= 0.0 || trees_.empty()) return 0.5;
  return std::pow(2.0, -averagePathLength(x) / normalizer_);
}

std::vector<double> IsolationForest1D::scoreAll(const std::vector<double>& values) const {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(score(v));
  return out;
}

}  // namespace dq
