#pragma once

#include <cstddef>
#include <string_view>

namespace dq {

// Edit distance with unit-cost insertion, deletion, substitution and
// adjacent-character transposition. Each substring pair is resolved once, so
// a transposed pair cannot be edited again afterwards; the result can exceed
// what a chain of overlapping swaps could reach, and the triangle inequality
// is deliberately not relied upon anywhere.
std::size_t dld(std::string_view a, std::string_view b);

// Similarity in [0, 1]: (maxLen - dld) / maxLen, and 1 for two empty strings.
double dls(std::string_view a, std::string_view b);

}  // namespace dq
