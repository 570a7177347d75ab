#pragma once

#include <cstdint>
#include <vector>

namespace dq {

// Isolation forest over a single numeric axis. Random axis-aligned splits
// isolate sparse points in few cuts, so short average paths mean anomalous.
// Scores follow the classic normalization: s(x) = 2^(-E[h(x)] / c(m)) where
// m is the per-tree sample size and c the average-path correction.
class IsolationForest1D {
 public:
  struct Config {
    int trees = 100;
    std::size_t subsample = 256;
    double scoreThreshold = 0.6;
  };

  IsolationForest1D(const std::vector<double>& values, const Config& config, std::uint64_t seed);

  double averagePathLength(double x) const;
  double score(double x) const;
  bool isAnomaly(double x) const { return score(x) >= config_.scoreThreshold; }
  std::vector<double> scoreAll(const std::vector<double>& values) const;

  std::size_t sampleSize() const { return sampleSize_; }

  // Expected path length of an unsuccessful search in a BST of n nodes; the
  // standard c(n) term used both at capped leaves and in the normalizer.
  static double averagePathCorrection(std::size_t n);

 private:
  struct Node {
    double split = 0.0;
    int left = -1;   // negative marks a leaf
    int right = -1;
    std::uint32_t leafSize = 0;
  };
  struct Tree {
    std::vector<Node> nodes;
  };

  Config config_;
  std::size_t sampleSize_ = 0;
  double normalizer_ = 1.0;
  std::vector<Tree> trees_;

  double pathLength(const Tree& tree, double x) const;
};

}  // namespace dq
