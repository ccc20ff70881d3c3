// Exact rational scalars used by every symbolic component.
//
// All symbolic arithmetic in this project is exact: q-exponents, weight
// coefficients, series coefficients and multiplicities are rationals with
// arbitrary-precision integers underneath. No floating point enters the
// symbolic layer.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace qloop {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// q^n with exact rational base and integer (possibly negative) exponent.
inline Rational rational_pow(const Rational& base, long exponent) {
    if (exponent == 0) return Rational(1);
    if (base == 0) {
        if (exponent < 0) throw std::domain_error("rational_pow: 0 to a negative power");
        return Rational(0);
    }
    Rational result(1);
    Rational b = exponent > 0 ? base : Rational(1) / base;
    unsigned long k = exponent > 0 ? static_cast<unsigned long>(exponent)
                                   : static_cast<unsigned long>(-exponent);
    while (k > 0) {
        if (k & 1ul) result *= b;
        b *= b;
        k >>= 1;
    }
    return result;
}

/// Render p/q without a denominator when it is integral.
inline std::string rational_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// True when the rational is an integer.
inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

/// Exact conversion to long; throws when not integral or out of range.
inline long to_long_exact(const Rational& r) {
    if (!is_integral(r)) throw std::domain_error("to_long_exact: not an integer: " + rational_str(r));
    return static_cast<long>(numerator(r));
}

}  // namespace qloop
