#pragma once

// Data-parallel kernel behind the Hall deficiency scan: for a fixed bitset
// `base` and a table of bitsets, count the bits of each union base | row.
//
// The table is stored word-major so that wide registers hold the same word of
// several consecutive rows: word w of row j lives at table[w * rows + j].
// Every variant must produce bit-identical output; the scalar kernel is the
// reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace multmatch::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// True when the variant is compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Widest available variant, resolved once per process.
Isa best_isa();

std::vector<Isa> available_isas();

/// out[j] = popcount(base | row j) for j < rows. base.size() is the word
/// count W; table.size() must be W * rows and out.size() at least rows.
/// Throws std::invalid_argument on shape mismatch or an unavailable isa.
void union_popcount(std::span<const std::uint64_t> base, std::span<const std::uint64_t> table,
                    std::size_t rows, std::span<std::uint32_t> out, Isa isa);

inline void union_popcount(std::span<const std::uint64_t> base,
                           std::span<const std::uint64_t> table, std::size_t rows,
                           std::span<std::uint32_t> out) {
  union_popcount(base, table, rows, out, best_isa());
}

namespace detail {

void union_popcount_scalar(const std::uint64_t* base, std::size_t words,
                           const std::uint64_t* table, std::size_t rows, std::uint32_t* out);

#if defined(__x86_64__) || defined(__i386__)
#define MULTMATCH_HAVE_AVX2_KERNEL 1
void union_popcount_avx2(const std::uint64_t* base, std::size_t words,
                         const std::uint64_t* table, std::size_t rows, std::uint32_t* out);
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define MULTMATCH_HAVE_NEON_KERNEL 1
void union_popcount_neon(const std::uint64_t* base, std::size_t words,
                         const std::uint64_t* table, std::size_t rows, std::uint32_t* out);
#endif

}  // namespace detail
}  // namespace multmatch::simd
