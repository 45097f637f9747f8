#pragma once

// Extremal witnesses for the upper bound f(st) <= s + t.
//
// With D = lcm(1..st) and P the primes p > st dividing some q + rD
// (0 < |q| < s, |r| < t), pick M above a lower bound avoiding every class
// -i - jD (mod p), set alpha(i,j) = M + i + jD and solve x0 = i (mod alpha(i,j))
// for all i, j. Every multiple of an alpha inside (x0 - M, x0 - M + c * max A)
// is then one of x0 - i or x0 + M + jD.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multmatch/bigint.hpp"
#include "multmatch/divgraph.hpp"
#include "multmatch/numtheory.hpp"

namespace multmatch::construction {

struct ConstructionWitness {
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  Int D;
  std::vector<Int> P;
  Int M;
  std::vector<std::vector<Int>> alphas;  // alphas[i - 1][j - 1] = M + i + jD
  Int x0;
  Int x;
  Rational interval_factor{2};
  std::vector<Int> predicted_multiples;

  /// The alphas, ascending.
  std::vector<Int> A() const;
  divgraph::Instance instance() const;

  friend bool operator==(const ConstructionWitness&, const ConstructionWitness&) = default;
};

std::vector<Int> build_prime_set(std::uint64_t s, std::uint64_t t);

/// Lower bound for M: 2s + 2tD, or ceil((3 - eps)(s + tD) / eps).
Int m_lower_bound(std::uint64_t s, std::uint64_t t, const Int& D,
                  const std::optional<Rational>& epsilon);

/// Smallest M > lower_bound with M != -i - jD (mod p) for every p in P,
/// 1 <= i <= s, 1 <= j <= t. Every p must exceed st.
Int choose_M(std::uint64_t s, std::uint64_t t, const Int& D, std::span<const Int> P,
             const Int& lower_bound);

/// The congruences x = i (mod alpha(i,j)) in row-major grid order.
std::vector<numtheory::Congruence> grid_congruences(const std::vector<std::vector<Int>>& alphas);

/// Minimal nonnegative solution of the congruence system, folded in order.
/// Throws Error when a pair is inconsistent (gcd of moduli not dividing the
/// residue difference).
Int solve_x0(std::span<const numtheory::Congruence> congruences);

/// Full pipeline. Requires s, t >= 2 (swapped so that s <= t); epsilon, when
/// given, must lie in (0, 1) and widens the interval to (3 - eps) max A.
ConstructionWitness build_witness(std::uint64_t s, std::uint64_t t,
                                  std::optional<Rational> epsilon = std::nullopt);

struct ClaimResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct WitnessVerification {
  std::vector<Int> multiples;  // recomputed from scratch
  std::size_t multiples_count = 0;
  std::uint64_t bound = 0;  // s + t
  std::size_t matching_size = 0;
  std::vector<ClaimResult> claims;

  bool ok() const;
  std::vector<std::string> failed() const;
};

/// Recomputes every derived quantity of a witness and reports each check by
/// name. Never throws on a corrupted witness; failures are reported.
WitnessVerification verify_witness(const ConstructionWitness& w);

/// (s, t) = (k, k + 1) when k^2 < m <= k(k + 1), else (k + 1, k + 1).
std::pair<std::uint64_t, std::uint64_t> bracket_for_m(std::uint64_t m);

struct WitnessForM {
  std::uint64_t m = 0;
  ConstructionWitness witness;
  divgraph::Instance instance;  // the st - m smallest alphas removed
  std::uint64_t predicted_bound = 0;
};

/// m-element instance with at most ceil(2 sqrt m) multiples. Requires m >= 4.
WitnessForM witness_for_m(std::uint64_t m);

/// Checks a reduced instance against its parent witness: subset of A, keeps
/// max A and x, has m elements, and its multiple count is within the bound.
WitnessVerification verify_reduction(const WitnessForM& reduced);

}  // namespace multmatch::construction
