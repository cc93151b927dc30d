#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace profinite {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer ipow(const Integer& base, unsigned exponent);
Integer ipow(std::uint64_t base, unsigned exponent);

/// Least nonnegative residue of `a` modulo `m` (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);

Integer factorial(unsigned n);
Integer binomial(const Integer& n, unsigned k);

/// p-adic valuation of n! by Legendre's digit-sum form (n - s_p(n)) / (p - 1).
unsigned factorial_valuation(std::uint64_t n, std::uint64_t p);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

}  // namespace profinite
