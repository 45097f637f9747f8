#include "multmatch/simd/union_popcount.hpp"

#if defined(MULTMATCH_HAVE_AVX2_KERNEL)

#include <immintrin.h>

#include <bit>

namespace multmatch::simd::detail {
namespace {

// Nibble-table popcount; _mm256_sad_epu8 folds the byte counts of each
// 64-bit lane into that lane.
__attribute__((target("avx2"))) inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes =
      _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

}  // namespace

__attribute__((target("avx2"))) void union_popcount_avx2(const std::uint64_t* base,
                                                          std::size_t words,
                                                          const std::uint64_t* table,
                                                          std::size_t rows, std::uint32_t* out) {
  std::size_t j = 0;
  for (; j + 4 <= rows; j += 4) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t w = 0; w < words; ++w) {
      const __m256i row = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + w * rows + j));
      const __m256i fixed = _mm256_set1_epi64x(static_cast<long long>(base[w]));
      acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_or_si256(row, fixed)));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (int k = 0; k < 4; ++k) out[j + k] = static_cast<std::uint32_t>(lanes[k]);
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
