#include "multmatch/numtheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace multmatch::numtheory {

Congruence::Congruence(const Int& residue, const Int& modulus) : modulus_(modulus) {
  if (modulus_ < 1) throw std::invalid_argument("congruence modulus must be positive");
  residue_ = mod_floor(residue, modulus_);
}

bool Congruence::contains(const Int& value) const {
  return mod_floor(value, modulus_) == residue_;
}

InconsistentCongruences::InconsistentCongruences(Congruence first, Congruence second)
    : Error("inconsistent congruences: " + to_string(first.residue()) + " mod " +
            to_string(first.modulus()) + " and " + to_string(second.residue()) + " mod " +
            to_string(second.modulus())),
      first_(std::move(first)),
      second_(std::move(second)) {}

Int PrimeFactorization::value() const {
  Int out = sign;
  for (const auto& [prime, exponent] : factors) {
    Int power;
    mpz_pow_ui(power.get_mpz_t(), prime.get_mpz_t(), exponent);
    out *= power;
  }
  return out;
}

Int lcm_range(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("lcm_range requires n >= 1");
  Int out = 1;
  for (std::uint64_t k = 2; k <= n; ++k) {
    const Int factor(static_cast<unsigned long>(k));
    mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), factor.get_mpz_t());
  }
  return out;
}

unsigned padic_valuation(const Int& p, const Int& n) {
  if (n == 0) throw Error("valuation undefined: n = 0");
  if (p < 2) throw std::invalid_argument("valuation base must be a prime");
  unsigned e = 0;
  Int rest = abs(n);
  while (divides(p, rest)) {
    rest /= p;
    ++e;
  }
  return e;
}

namespace {

// Trial division on machine words; the values factored by the construction
// stay far below 2^64.
void factor_u64(std::uint64_t n, std::vector<PrimePower>& out) {
  auto take = [&](std::uint64_t d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.push_back({Int(static_cast<unsigned long>(d)), e});
  };
  take(2);
  for (std::uint64_t d = 3; d <= n / d; d += 2) take(d);
  if (n > 1) out.push_back({Int(static_cast<unsigned long>(n)), 1});
}

void factor_big(Int n, std::vector<PrimePower>& out) {
  for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (divides(d, n)) {
      n /= d;
      ++e;
    }
    if (e > 0) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
}

}  // namespace

PrimeFactorization factorize(const Int& n) {
  if (n == 0) throw Error("cannot factor zero");
  PrimeFactorization result;
  result.sign = sgn(n) < 0 ? -1 : 1;
  const Int magnitude = abs(n);
  if (mpz_fits_ulong_p(magnitude.get_mpz_t())) {
    factor_u64(magnitude.get_ui(), result.factors);
  } else {
    factor_big(magnitude, result.factors);
  }
  return result;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.factors.size() == 1 && f.factors.front().exponent == 1;
}

std::vector<Int> primes_above_bound(const Int& n, const Int& bound) {
  if (n == 0) throw Error("primes_above_bound: 0 is divisible by every prime");
  std::vector<Int> out;
  for (const auto& pp : factorize(n).factors) {
    if (pp.prime > bound) out.push_back(pp.prime);
  }
  return out;
}

Congruence crt_merge(const Congruence& first, const Congruence& second) {
  const Int& n1 = first.modulus();
  const Int& n2 = second.modulus();
  Int g;
  mpz_gcd(g.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
  const Int diff = second.residue() - first.residue();
  if (!divides(g, diff)) throw InconsistentCongruences(first, second);

  // a1 + n1*k == a2 (mod n2)  <=>  (n1/g) k == diff/g (mod n2/g)
  const Int reduced_mod = n2 / g;
  Int k = 0;
  if (reduced_mod > 1) {
    Int inverse;
    const Int n1g = n1 / g;
    mpz_invert(inverse.get_mpz_t(), n1g.get_mpz_t(), reduced_mod.get_mpz_t());
    k = mod_floor(Int(diff / g) * inverse, reduced_mod);
  }
  const Int lcm = n1 * reduced_mod;
  return Congruence(first.residue() + n1 * k, lcm);
}

Congruence crt_fold(std::span<const Congruence> congruences) {
  Congruence acc(0, 1);
  for (const auto& c : congruences) acc = crt_merge(acc, c);
  return acc;
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt of a negative number");
  Int out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

Int ceil_two_sqrt(const Int& m) {
  if (m < 1) throw std::invalid_argument("ceil_two_sqrt requires m >= 1");
  const Int four_m = 4 * m;
  Int r = isqrt(four_m);
  if (r * r < four_m) ++r;
  return r;
}

std::uint64_t ceil_two_sqrt(std::uint64_t m) {
  return ceil_two_sqrt(Int(static_cast<unsigned long>(m))).get_ui();
}

}  // namespace multmatch::numtheory
