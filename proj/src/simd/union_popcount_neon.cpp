#include "multmatch/simd/union_popcount.hpp"

#if defined(MULTMATCH_HAVE_NEON_KERNEL)

#include <arm_neon.h>

#include <bit>

namespace multmatch::simd::detail {

void union_popcount_neon(const std::uint64_t* base, std::size_t words,
                         const std::uint64_t* table, std::size_t rows, std::uint32_t* out) {
  std::size_t j = 0;
  for (; j + 2 <= rows; j += 2) {
    uint64x2_t acc = vdupq_n_u64(0);
    for (std::size_t w = 0; w < words; ++w) {
      const uint64x2_t row = vld1q_u64(table + w * rows + j);
      const uint64x2_t v = vorrq_u64(row, vdupq_n_u64(base[w]));
      const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(v));
      acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(bytes))));
    }
    out[j] = static_cast<std::uint32_t>(vgetq_lane_u64(acc, 0));
    out[j + 1] = static_cast<std::uint32_t>(vgetq_lane_u64(acc, 1));
  }
  for (; j < rows; ++j) {
    std::uint32_t count = 0;
    for (std::size_t w = 0; w < words; ++w) {
      count += static_cast<std::uint32_t>(std::popcount(base[w] | table[w * rows + j]));
    }
    out[j] = count;
  }
}

}  // namespace multmatch::simd::detail

#endif
