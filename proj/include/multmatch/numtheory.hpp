#pragma once

// Number-theoretic primitives used by the witness construction: range lcm,
// p-adic valuation, trial-division factorization, two-modulus generalized CRT
// and the integer form of ceil(2 sqrt m).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "multmatch/bigint.hpp"
#include "multmatch/error.hpp"

namespace multmatch::numtheory {

/// The class residue (mod modulus), stored with 0 <= residue < modulus.
class Congruence {
 public:
  Congruence(const Int& residue, const Int& modulus);

  const Int& residue() const noexcept { return residue_; }
  const Int& modulus() const noexcept { return modulus_; }

  bool contains(const Int& value) const;

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  Int residue_;
  Int modulus_;
};

class InconsistentCongruences : public Error {
 public:
  InconsistentCongruences(Congruence first, Congruence second);

  const Congruence& first() const noexcept { return first_; }
  const Congruence& second() const noexcept { return second_; }

 private:
  Congruence first_;
  Congruence second_;
};

struct PrimePower {
  Int prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct PrimeFactorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  Int value() const;
};

/// lcm(1, 2, ..., n). n must be positive.
Int lcm_range(std::uint64_t n);

/// Largest e with p^e | n. Throws Error("valuation undefined") for n == 0.
unsigned padic_valuation(const Int& p, const Int& n);

/// Deterministic trial-division primality test.
bool is_prime(const Int& n);

/// Complete factorization of a nonzero integer by trial division up to the
/// integer square root; a leftover cofactor above one is prime.
PrimeFactorization factorize(const Int& n);

/// Primes p > bound with p | n, ascending. n must be nonzero.
std::vector<Int> primes_above_bound(const Int& n, const Int& bound);

/// Merges two congruences into one modulo lcm of the moduli. Throws
/// InconsistentCongruences when gcd(n1, n2) does not divide a1 - a2.
Congruence crt_merge(const Congruence& first, const Congruence& second);

/// Left fold of crt_merge in the given order. Empty input is the class 0 mod 1.
Congruence crt_fold(std::span<const Congruence> congruences);

/// Least r with r^2 >= 4m, i.e. ceil(2 sqrt m). m must be positive.
Int ceil_two_sqrt(const Int& m);
std::uint64_t ceil_two_sqrt(std::uint64_t m);

/// Integer square root, floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

}  // namespace multmatch::numtheory
