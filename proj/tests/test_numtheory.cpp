#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "multmatch/numtheory.hpp"

using namespace multmatch;
using namespace multmatch::numtheory;

namespace {

// Oracles, deliberately naive.

bool naive_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d < n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Int lcm_by_prime_powers(unsigned n) {
  Int out = 1;
  for (unsigned p = 2; p <= n; ++p) {
    if (!naive_prime(p)) continue;
    unsigned long q = p;
    while (q * p <= n) q *= p;
    out *= q;
  }
  return out;
}

unsigned divide_out(long p, long n) {
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

unsigned floor_log(unsigned long p, unsigned long n) {
  unsigned e = 0;
  for (unsigned long q = p; q <= n; q *= p) ++e;
  return e;
}

long scan_crt(long a1, long n1, long a2, long n2) {
  for (long y = 0; y < n1 * n2; ++y) {
    if (y % n1 == a1 && y % n2 == a2) return y;
  }
  return -1;
}

}  // namespace

TEST_CASE("lcm_range") {
  CHECK(lcm_range(1) == 1);
  CHECK(lcm_range(4) == 12);
  CHECK(lcm_by_prime_powers(9) == 2520);
  CHECK(lcm_range(9) == 2520);
  for (unsigned n = 1; n <= 60; ++n) CHECK(lcm_range(n) == lcm_by_prime_powers(n));
  CHECK_THROWS_AS(lcm_range(0), std::invalid_argument);
}

TEST_CASE("lcm_range valuations equal floor(log_p n)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const unsigned long n = std::uniform_int_distribution<unsigned long>(2, trial < 4 ? 3000 : 1'000'000)(rng);
    const Int L = lcm_range(n);
    for (unsigned long p = 2; p <= n && p < 400; ++p) {
      if (!naive_prime(static_cast<long>(p))) continue;
      CHECK(padic_valuation(Int(p), L) == floor_log(p, n));
    }
  }
}

TEST_CASE("padic_valuation") {
  CHECK(padic_valuation(2, 12) == 2);
  CHECK(padic_valuation(5, 12) == 0);
  CHECK(divide_out(3, 2520) == 2);
  CHECK(padic_valuation(3, 2520) == 2);
  CHECK(padic_valuation(3, -81) == 4);
  CHECK_THROWS_WITH_AS(padic_valuation(3, 0), doctest::Contains("valuation undefined"), Error);
}

TEST_CASE("factorize reproduces the value") {
  for (long n = -3000; n <= 3000; ++n) {
    if (n == 0) continue;
    const auto f = factorize(n);
    CHECK(f.value() == n);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      CHECK(naive_prime(f.factors[i].prime.get_si()));
      if (i > 0) CHECK(f.factors[i - 1].prime < f.factors[i].prime);
    }
  }
  const Int big = Int(1000003) * Int(999983);
  CHECK(factorize(big).factors.size() == 2);
  CHECK(factorize(big).value() == big);
  Int beyond_word;
  mpz_ui_pow_ui(beyond_word.get_mpz_t(), 2, 70);
  beyond_word *= 9 * 101;
  const auto f = factorize(beyond_word);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == PrimePower{2, 70});
  CHECK(f.factors[1] == PrimePower{3, 2});
  CHECK(f.factors[2] == PrimePower{101, 1});
}

TEST_CASE("primes_above_bound") {
  CHECK(primes_above_bound(-13, 4) == std::vector<Int>{13});
  CHECK(primes_above_bound(-1, 4).empty());
  CHECK(primes_above_bound(-119, 6) == std::vector<Int>{7, 17});
  CHECK_THROWS_AS(primes_above_bound(0, 4), Error);

  std::vector<long> small_primes;
  for (long p = 2; p <= 10000; ++p) {
    if (naive_prime(p)) small_primes.push_back(p);
  }
  for (long n = -10000; n <= 10000; ++n) {
    if (n == 0) continue;
    for (long b = 1; b <= 20; ++b) {
      std::vector<Int> naive;
      for (long p : small_primes) {
        if (p > b && std::labs(n) % p == 0) naive.push_back(p);
      }
      REQUIRE(primes_above_bound(n, b) == naive);
    }
  }
}

TEST_CASE("crt_merge examples") {
  CHECK(scan_crt(1, 67, 2, 68) == 4490);
  const auto c = crt_merge({1, 67}, {2, 68});
  CHECK(c == Congruence(4490, 4556));

  const auto d = crt_merge({2, 68}, {2, 80});
  CHECK(d == Congruence(2, 1360));

  CHECK_THROWS_WITH_AS(crt_merge({1, 4}, {2, 6}), doctest::Contains("inconsistent congruences"),
                       InconsistentCongruences);
  try {
    crt_merge({1, 4}, {2, 6});
  } catch (const InconsistentCongruences& e) {
    CHECK(e.first() == Congruence(1, 4));
    CHECK(e.second() == Congruence(2, 6));
  }
}

TEST_CASE("crt_merge satisfies both inputs on random consistent pairs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> mod(1, 10000);
  for (int trial = 0; trial < 1000; ++trial) {
    const long n1 = mod(rng);
    const long n2 = mod(rng);
    const long y = std::uniform_int_distribution<long>(0, 1L << 40)(rng);
    const auto merged = crt_merge({y, n1}, {y, n2});
    Int g, l;
    mpz_lcm(l.get_mpz_t(), Int(n1).get_mpz_t(), Int(n2).get_mpz_t());
    CHECK(merged.modulus() == l);
    CHECK(merged.residue() >= 0);
    CHECK(merged.residue() < merged.modulus());
    CHECK(merged.contains(y));
    CHECK(mod_floor(merged.residue(), Int(n1)) == y % n1);
    CHECK(mod_floor(merged.residue(), Int(n2)) == y % n2);
  }
  // small moduli against the linear scan
  for (long n1 = 1; n1 <= 24; ++n1) {
    for (long n2 = 1; n2 <= 24; ++n2) {
      for (long a1 = 0; a1 < n1; a1 += 5) {
        for (long a2 = 0; a2 < n2; a2 += 3) {
          const long expect = scan_crt(a1, n1, a2, n2);
          if (expect < 0) {
            CHECK_THROWS_AS(crt_merge({a1, n1}, {a2, n2}), InconsistentCongruences);
          } else {
            CHECK(crt_merge({a1, n1}, {a2, n2}).residue() == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("crt_fold is order independent") {
  const std::vector<Congruence> grid{{1, 67}, {2, 68}, {1, 79}, {2, 80}};
  const std::vector<Congruence> shuffled{{2, 80}, {1, 67}, {1, 79}, {2, 68}};
  CHECK(crt_fold(grid) == crt_fold(shuffled));
  CHECK(crt_fold(grid).residue() == 195842);
  CHECK(crt_fold(std::vector<Congruence>{}) == Congruence(0, 1));
}

TEST_CASE("ceil_two_sqrt") {
  CHECK(ceil_two_sqrt(std::uint64_t{1}) == 2);
  CHECK(ceil_two_sqrt(std::uint64_t{6}) == 5);
  CHECK(ceil_two_sqrt(std::uint64_t{8}) == 6);
  std::uint64_t previous = 0;
  for (std::uint64_t m = 1; m <= 1'000'000; ++m) {
    const std::uint64_t r = ceil_two_sqrt(m);
    REQUIRE(r * r >= 4 * m);
    REQUIRE((r - 1) * (r - 1) < 4 * m);
    const std::uint64_t f = std::min(m, r);
    REQUIRE(f >= previous);
    previous = f;
  }
  CHECK_THROWS_AS(ceil_two_sqrt(std::uint64_t{0}), std::invalid_argument);
}
