#include "dqforge/edit_distance.hpp"

#include <algorithm>
#include <vector>

namespace dq {

std::size_t dld(std::string_view a, std::string_view b) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  if (la == 0) return lb;
  if (lb == 0) return la;

  // Three rolling rows: current, previous, and the one before that for the
  // transposition case.
  std::vector<std::size_t> prev2(lb + 1), prev(lb + 1), cur(lb + 1);
  for (std::size_t j = 0; j <= lb; ++j) prev[j] = j;

  for (std::size_t i = 1; i <= la; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= lb; ++j) {
      const std::size_t costSub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const std::size_t costDel = prev[j] + 1;
      const std::size_t costIns = cur[j - 1] + 1;
      std::size_t best = std::min({costSub, costDel, costIns});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, prev2[j - 2] + 1);
      }
      cur[j] = best;
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[lb];
}

double dls(std::string_view a, std::string_view b) {
  const std::size_t maxLen = std::max(a.size(), b.size());
  if (maxLen == 0) return 1.0;
  return static_cast<double>(maxLen - dld(a, b)) / static_cast<double>(maxLen);
}

}  // namespace dq
