#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace ordsemi {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::strong_ordering to_ordering(int c) noexcept {
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline std::strong_ordering compare_integers(const Integer& a, const Integer& b) {
    return to_ordering(cmp(a, b));
}

inline std::strong_ordering compare_rationals(const Rational& a, const Rational& b) {
    return to_ordering(cmp(a, b));
}

/// 2^k as an integer.
Integer pow2(unsigned long k);

/// floor(a / b) for b != 0.
Integer floor_div(const Integer& a, const Integer& b);

/// ceil(a / b) for b != 0.
Integer ceil_div(const Integer& a, const Integer& b);

/// floor(q * 2^k).
Integer floor_scaled(const Rational& q, unsigned long k);

/// ceil(q * 2^k).
Integer ceil_scaled(const Rational& q, unsigned long k);

/// m / 2^k as a canonical rational.
Rational dyadic(const Integer& mantissa, unsigned long k);

/// Smallest b >= 0 with |x| <= 2^b.
unsigned long magnitude_bits(const Rational& x);

/// Smallest b >= 0 with n <= 2^b, for n >= 1.
unsigned long ceil_log2(const Integer& n);

/// True when the denominator of q is a power of two.
bool is_dyadic(const Rational& q);

inline std::string to_decimal(const Integer& z) { return z.get_str(10); }

} // namespace ordsemi
