#pragma once

// The divisibility graph G(A, x): left side A, right side the integers of the
// open interval (x, x + c * max A), and an edge a -- b whenever a | b.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multmatch/bigint.hpp"
#include "multmatch/error.hpp"
#include "multmatch/simd/union_popcount.hpp"

namespace multmatch::divgraph {

inline constexpr std::uint64_t kDefaultIntervalCap = 10'000'000;
inline constexpr std::size_t kDefaultSubsetCap = 20;

/// A strictly increasing set A of positive integers, a rational left
/// endpoint x and an interval factor c with 2 <= c < 3.
struct Instance {
  std::vector<Int> A;
  Rational x;
  Rational c{2};

  /// Validating constructor; throws std::invalid_argument.
  static Instance make(std::vector<Int> A, Rational x, Rational c = Rational(2));

  std::size_t size() const noexcept { return A.size(); }
  const Int& max() const { return A.back(); }
  Rational upper() const { return x + c * max(); }
  bool contains(const Int& b) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

void validate(const Instance& inst);

/// Integers strictly between lower and upper that are multiples of a > 0.
std::vector<Int> multiples_in_interval(const Int& a, const Rational& lower, const Rational& upper);
Int count_multiples_in_interval(const Int& a, const Rational& lower, const Rational& upper);

enum class BMode { full, multiples_only };

std::string_view mode_name(BMode mode);
BMode parse_mode(std::string_view text);

/// Sorted B. Both modes throw CapExceeded("interval-cap") when more than
/// `cap` integers would be produced; multiples-only mode merges the
/// progressions of A and never walks the interval.
std::vector<Int> enumerate_B(const Instance& inst, BMode mode,
                             std::uint64_t cap = kDefaultIntervalCap);

struct DivisibilityGraph {
  Instance instance;
  BMode mode = BMode::multiples_only;
  std::vector<Int> B;
  // adjacency[i]: ascending indices into B of the multiples of A[i].
  std::vector<std::vector<std::size_t>> adjacency;
};

DivisibilityGraph build_graph(const Instance& inst, BMode mode = BMode::multiples_only,
                              std::uint64_t cap = kDefaultIntervalCap);

struct MatchedPair {
  Int a;
  Int b;
  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct MatchingCertificate {
  std::vector<MatchedPair> pairs;  // sorted by a
  std::size_t size() const noexcept { return pairs.size(); }
  friend bool operator==(const MatchingCertificate&, const MatchingCertificate&) = default;
};

/// Vertices removed before matching (the restricted graph G0 of the lower
/// bound argument drops max A and b0 = x + max A).
struct MatchingExclusion {
  std::optional<std::size_t> a_index;
  std::optional<Int> b;
};

/// Maximum matching by Hopcroft-Karp. Left vertices are processed in
/// increasing a and edges in increasing b, so the pairing is deterministic.
MatchingCertificate max_matching(const DivisibilityGraph& graph,
                                 const MatchingExclusion& exclude = {});

/// Independent soundness check of a certificate against an instance. Returns
/// the list of problems found; empty means sound.
std::vector<std::string> check_matching(const Instance& inst, const MatchingCertificate& cert);

struct DeficiencyReport {
  std::vector<Int> worst_set;
  std::vector<std::size_t> worst_indices;
  std::size_t gamma_size = 0;
  long long deficiency = 0;  // |S| - |Gamma(S)|
  std::size_t konig_ore_size = 0;

  friend bool operator==(const DeficiencyReport&, const DeficiencyReport&) = default;
};

struct DeficiencyOptions {
  std::size_t subset_cap = kDefaultSubsetCap;
  simd::Isa isa = simd::best_isa();
};

/// Scans all nonempty S subset of A. The maximizer of |S| - |Gamma(S)| is
/// reported, ties going to smaller |S| and then to the lexicographically
/// smaller list of A-indices. Throws CapExceeded("subset-cap").
DeficiencyReport deficiency_scan(const DivisibilityGraph& graph, const DeficiencyOptions& opts = {});

struct FValueCheck {
  std::size_t matching_size = 0;
  std::size_t lower_bound = 0;
  bool satisfied = false;
};

/// Compares F(A, x) with min(m, ceil(2 sqrt m)). Requires c = 2.
FValueCheck f_value_check(const Instance& inst, std::uint64_t cap = kDefaultIntervalCap);

/// Largest a_m accepted by small_matching_size (B fits one 64-bit word).
inline constexpr std::uint32_t kSmallMaxValue = 32;

/// F(A, x) for c = 2, all a <= 32 and x = base (half == false) or
/// x = base + 1/2 (half == true), on a single-word bitmask graph.
std::uint32_t small_matching_size(std::span<const std::uint32_t> A, std::int64_t base, bool half);

}  // namespace multmatch::divgraph
