#include "profinite/integer.hpp"

namespace profinite {

Integer ipow(const Integer& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

Integer ipow(std::uint64_t base, unsigned exponent) {
  return ipow(Integer(base), exponent);
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer binomial(const Integer& n, unsigned k) {
  // Falling factorial over k!, exact for every integer n.
  Integer num = 1;
  for (unsigned i = 0; i < k; ++i) num *= (n - i);
  return num / factorial(k);
}

unsigned factorial_valuation(std::uint64_t n, std::uint64_t p) {
  std::uint64_t digit_sum = 0;
  for (std::uint64_t t = n; t > 0; t /= p) digit_sum += t % p;
  return static_cast<unsigned>((n - digit_sum) / (p - 1));
}

std::string to_string(const Integer& v) { return v.str(); }

std::string to_string(const Rational& v) {
  if (boost::multiprecision::denominator(v) == 1) return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
}

}  // namespace profinite
