#include "multmatch/bigint.hpp"

#include <cctype>
#include <stdexcept>

namespace multmatch {
namespace {

bool is_decimal(std::string_view text, bool allow_sign) {
  if (allow_sign && !text.empty() && text.front() == '-') text.remove_prefix(1);
  if (text.empty()) return false;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Int parse_int(std::string_view text) {
  if (!is_decimal(text, true)) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return Int(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_decimal(num, true) || !is_decimal(den, false)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  Int d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational value(Int(std::string(num), 10), d);
  value.canonicalize();
  return value;
}

std::string to_string(const Int& value) { return value.get_str(10); }

std::string to_string(const Rational& value) { return value.get_str(10); }

Int floor_of(const Rational& value) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Int ceil_of(const Rational& value) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

bool is_integral(const Rational& value) { return value.get_den() == 1; }

Int floor_div(const Int& num, const Int& den) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Int ceil_div(const Int& num, const Int& den) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Int mod_floor(const Int& num, const Int& modulus) {
  Int out;
  mpz_fdiv_r(out.get_mpz_t(), num.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

bool divides(const Int& d, const Int& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace multmatch
