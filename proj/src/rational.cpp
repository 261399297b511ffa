#include "lcmsum/rational.hpp"

#include <gmp.h>

#include <stdexcept>

namespace lcmsum {

std::string to_string(const ExactRational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

std::string to_string(const BigInt& n) { return n.str(); }

ExactRational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return ExactRational(BigInt(text));
  BigInt num(text.substr(0, slash));
  BigInt den(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return ExactRational(num, den);
}

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.backend().data(), n);
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.backend().data(), n, k);
  return out;
}

BigInt pow_big(const BigInt& base, unsigned exponent) {
  BigInt out;
  mpz_pow_ui(out.backend().data(), base.backend().data(), exponent);
  return out;
}

ExactRational sum_reciprocals(const std::map<std::uint64_t, BigInt>& histogram) {
  BigInt common = 1;
  for (const auto& [value, count] : histogram) {
    if (value == 0) throw std::invalid_argument("sum_reciprocals: zero value");
    mpz_lcm_ui(common.backend().data(), common.backend().data(), value);
  }
  BigInt numerator = 0;
  BigInt scaled;
  for (const auto& [value, count] : histogram) {
    mpz_divexact_ui(scaled.backend().data(), common.backend().data(), value);
    numerator += scaled * count;
  }
  return ExactRational(numerator, common);
}

}  // namespace lcmsum
