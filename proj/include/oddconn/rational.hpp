#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace oddconn {

/// Exact arbitrary-precision rational coefficient type (GMP-backed). Every
/// identity in the kernel is checked with exact equality, never within a
/// tolerance.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Renders `p` or `p/q` with the sign on the numerator.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// (-1)^e for a mod-2 exponent accumulated as an unsigned value.
constexpr int parity_sign(unsigned e) { return (e & 1u) ? -1 : 1; }

} // namespace oddconn
