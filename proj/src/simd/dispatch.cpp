#include <stdexcept>

#include "multmatch/simd/union_popcount.hpp"

namespace multmatch::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(MULTMATCH_HAVE_AVX2_KERNEL)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(MULTMATCH_HAVE_NEON_KERNEL)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  static const Isa resolved = [] {
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
  }();
  return resolved;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

void union_popcount(std::span<const std::uint64_t> base, std::span<const std::uint64_t> table,
                    std::size_t rows, std::span<std::uint32_t> out, Isa isa) {
  const std::size_t words = base.size();
  if (table.size() != words * rows || out.size() < rows) {
    throw std::invalid_argument("union_popcount: table shape mismatch");
  }
  if (!isa_available(isa)) {
    throw std::invalid_argument("union_popcount: isa not available: " + std::string(isa_name(isa)));
  }
  switch (isa) {
    case Isa::scalar:
      detail::union_popcount_scalar(base.data(), words, table.data(), rows, out.data());
      return;
    case Isa::avx2:
#if defined(MULTMATCH_HAVE_AVX2_KERNEL)
      detail::union_popcount_avx2(base.data(), words, table.data(), rows, out.data());
#endif
      return;
    case Isa::neon:
#if defined(MULTMATCH_HAVE_NEON_KERNEL)
      detail::union_popcount_neon(base.data(), words, table.data(), rows, out.data());
#endif
      return;
  }
}

}  // namespace multmatch::simd
