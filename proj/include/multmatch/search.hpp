#pragma once

// Exhaustive validation of F(A, x) >= min(m, ceil(2 sqrt m)) over every
// m-subset A of [1..max_value].
//
// Divisibility is periodic in x with period L = lcm(A), and for non-integral x
// the set B depends only on floor(x). The integers 0..L-1 together with the
// half-integers 1/2..L-1/2 therefore realize every B that any real x can
// produce. The scan validates the lower bound only; it does not compute f(m).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "multmatch/bigint.hpp"
#include "multmatch/divgraph.hpp"

namespace multmatch::search {

enum class XMode { canonical, explicit_list };

struct ScanConfig {
  std::uint32_t m = 1;
  std::uint32_t max_value = 1;
  XMode x_mode = XMode::canonical;
  std::vector<Rational> x_values;  // explicit_list only
  unsigned parallelism = 1;
  std::uint64_t b_cap = divgraph::kDefaultIntervalCap;
  std::uint64_t period_cap = 1'000'000;
  std::uint64_t budget = 500'000'000;  // (A, x) evaluations
  std::size_t max_witnesses = 5;
};

struct ScanInstance {
  std::vector<Int> A;
  Rational x;
  std::size_t F = 0;
  friend bool operator==(const ScanInstance&, const ScanInstance&) = default;
};

struct ScanReport {
  std::uint32_t m = 0;
  std::uint32_t max_value = 0;
  XMode x_mode = XMode::canonical;
  std::uint64_t instances_checked = 0;
  std::uint64_t subsets_checked = 0;
  std::size_t lower_bound = 0;  // min(m, ceil(2 sqrt m))
  std::size_t min_F = 0;
  std::vector<ScanInstance> argmin;  // first witnesses in enumeration order
  std::vector<ScanInstance> violations;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// The 2L canonical left endpoints: 0..L-1, then 1/2..L-1/2.
/// Throws CapExceeded("period-cap") when L exceeds period_cap.
std::vector<Rational> canonical_x_values(const std::vector<Int>& A, std::uint64_t period_cap = 1'000'000);

/// The canonical endpoint realizing the same B as x (shift by multiples of L).
Rational canonical_representative(const std::vector<Int>& A, const Rational& x);

/// Upper estimate of the number of (A, x) evaluations for a config.
Int estimate_work(const ScanConfig& cfg);

/// Runs the scan. Throws CapExceeded("scan-budget") before starting when the
/// estimate exceeds cfg.budget. The report does not depend on parallelism.
ScanReport scan(const ScanConfig& cfg);

}  // namespace multmatch::search
