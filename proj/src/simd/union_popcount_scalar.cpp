#include <bit>

#include "multmatch/simd/union_popcount.hpp"

namespace multmatch::simd::detail {

void union_popcount_scalar(const std::uint64_t* base, std::size_t words,
                           const std::uint64_t* table, std::size_t rows, std::uint32_t* out) {
  for (std::size_t j = 0; j < rows; ++j) {
    std::uint32_t count = 0;
    for (std::size_t w = 0; w < words; ++w) {
      count += static_cast<std::uint32_t>(std::popcount(base[w] | table[w * rows + j]));
    }
    out[j] = count;
  }
}

}  // namespace multmatch::simd::detail
