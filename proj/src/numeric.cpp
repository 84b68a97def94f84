#include "ordsemi/numeric.hpp"

namespace ordsemi {

Integer pow2(unsigned long k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_scaled(const Rational& q, unsigned long k) {
    Integer num = q.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), k);
    return floor_div(num, q.get_den());
}

Integer ceil_scaled(const Rational& q, unsigned long k) {
    Integer num = q.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), k);
    return ceil_div(num, q.get_den());
}

Rational dyadic(const Integer& mantissa, unsigned long k) {
    Rational r(mantissa, pow2(k));
    r.canonicalize();
    return r;
}

unsigned long ceil_log2(const Integer& n) {
    if (n <= 1) return 0;
    Integer m = n - 1;
    return mpz_sizeinbase(m.get_mpz_t(), 2);
}

unsigned long magnitude_bits(const Rational& x) {
    Rational a = abs(x);
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    return ceil_log2(c);
}

bool is_dyadic(const Rational& q) {
    const Integer& d = q.get_den();
    return mpz_popcount(d.get_mpz_t()) == 1;
}

} // namespace ordsemi
