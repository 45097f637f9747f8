#pragma once

// Lower-bound machinery for c = 2. The interval (x, x + 2 a_m) is split into
// B- = (x, x + a_m] and B+ = (x + a_m, x + 2 a_m). Each a in S is mapped to a
// pair (left, right) of its multiples, left in B- and right in B+, and the map
// is injective, so |S| <= |Gamma-(S)| |Gamma+(S)| <= |Gamma(S)|^2 / 4.
//
// When a_m | x the vertex b0 = x + a_m is reserved for a_m and the map is
// built on A0 = A \ {a_m} inside B \ {b0}, with three element types:
//   T1  a does not divide b0              (u, u + a)
//   T2  a | b0, 2a < a_m, 2a does not | b0 (u - 2a, u + 2a)
//   T3  a | b0, otherwise                 (u - a, u + a)
// where u is the largest multiple of a in B-.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multmatch/bigint.hpp"
#include "multmatch/divgraph.hpp"

namespace multmatch::hall {

using divgraph::Instance;

enum class ElementType { case1, t1, t2, t3 };

std::string_view type_name(ElementType type);
ElementType parse_type(std::string_view text);

struct InjectionEntry {
  Int a;
  Int u;
  ElementType type = ElementType::case1;
  Int left;
  Int right;
  friend bool operator==(const InjectionEntry&, const InjectionEntry&) = default;
};

struct InjectionCertificate {
  int case_id = 1;
  std::optional<Int> b0;
  std::vector<InjectionEntry> entries;
  friend bool operator==(const InjectionCertificate&, const InjectionCertificate&) = default;
};

/// a_m | x, which needs x integral.
bool is_case_two(const Instance& inst);

/// Largest multiple of a in (x, x + a_m]; requires 1 <= a <= a_m and c = 2.
Int largest_multiple_in_lower_half(const Int& a, const Instance& inst);

/// S itself for case 1, S without a_m for case 2.
std::vector<Int> default_scan_set(const Instance& inst);

/// Builds the map and checks injectivity and codomain before returning;
/// a failed check throws Error. In case 2, S must not contain a_m.
InjectionCertificate build_injection(std::span<const Int> S, const Instance& inst);

/// Re-derives every entry of a certificate and reports problems.
std::vector<std::string> check_injection(const InjectionCertificate& cert, const Instance& inst);

struct NeighborhoodCheck {
  std::size_t set_size = 0;
  std::size_t gamma_size = 0;
  std::size_t gamma_minus = 0;
  std::size_t gamma_plus = 0;
  bool ok = false;  // gamma_size^2 >= 4 |S|
};

/// |Gamma(S)| in G (case 1) or in G0 with b0 removed (case 2).
NeighborhoodCheck neighborhood_bound_check(std::span<const Int> S, const Instance& inst);

struct LowerBoundCertificate {
  int case_id = 1;
  divgraph::MatchingCertificate matching;
  std::size_t bound = 0;  // min(m, ceil(2 sqrt m))
  bool satisfied = false;
  InjectionCertificate injection;
  NeighborhoodCheck neighborhood;
  std::optional<divgraph::MatchedPair> reserved_edge;  // (a_m, b0) in case 2
};

LowerBoundCertificate lower_bound_certificate(const Instance& inst,
                                              std::uint64_t cap = divgraph::kDefaultIntervalCap);

}  // namespace multmatch::hall
