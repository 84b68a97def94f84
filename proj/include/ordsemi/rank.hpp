#pragma once

// Rank functions beta_n and the certified dyadic embedding of a pointed
// non-anomalous semigroup into the reals.
//
// For a positive basepoint a and positive x,
//
//     beta_n(x) = max { m >= 0 : m*a <= 2^n * x },
//
// and for every other x
//
//     beta_n(x) = -min { m >= 0 : m*a + 2^n * x is positive or the identity },
//
// which is floor(2^n * x / a) in any real model. Both branches satisfy
//
//     beta_n(a) = 2^n
//     2^k beta_n(x) <= beta_{n+k}(x) < 2^k + 2^k beta_n(x)
//     beta_n(x) + beta_n(y) <= beta_n(x + y) <= 1 + beta_n(x) + beta_n(y)
//     y < x  =>  beta_n(y) + 1 < beta_n(x) for some n
//
// so beta_n(x) / 2^n is the lower end of a half-open cell of width 2^-n
// around the image of x in the terminal object.

#include "ordsemi/order_core.hpp"
#include "ordsemi/stream.hpp"

#include <vector>

namespace ordsemi {

/// A backend with a distinguished non-identity basepoint. A negative
/// basepoint is handled by working in the dual backend, where it is
/// positive; callers always pass elements of backend().
class PointedBackend {
public:
    PointedBackend(BackendPtr backend, Element basepoint);

    const BackendPtr& backend() const noexcept { return backend_; }
    const Element& basepoint() const noexcept { return basepoint_; }

    /// The normalized view in which the basepoint is positive.
    const Backend& order() const noexcept { return *order_; }
    const Element& order_basepoint() const noexcept { return order_basepoint_; }
    bool dualized() const noexcept { return order_ != backend_; }

    Element to_order(const Element& x) const;
    Element from_order(const Element& x) const;

private:
    BackendPtr backend_;
    BackendPtr order_;
    Element basepoint_;
    Element order_basepoint_;
};

struct DyadicApproximant {
    Integer mantissa;
    unsigned level = 0;

    Rational value() const { return dyadic(mantissa, level); }
    friend bool operator==(const DyadicApproximant&, const DyadicApproximant&) = default;
};

/// Half-open cell [lo, lo + 2^-level).
struct DyadicEnclosure {
    DyadicApproximant lo;

    unsigned level() const noexcept { return lo.level; }
    Rational lower() const { return lo.value(); }
    Rational upper() const { return dyadic(Integer(lo.mantissa + 1), lo.level); }
    bool contains(const Rational& q) const { return lower() <= q && q < upper(); }
    bool contains(const DyadicEnclosure& inner) const;

    friend bool operator==(const DyadicEnclosure&, const DyadicEnclosure&) = default;
};

/// beta_n(x) computed from scratch. Throws PreconditionViolation on a
/// backend not flagged non-anomalous, BudgetExhausted from the searches.
Integer beta(unsigned n, const PointedBackend& p, const Element& x, const Budget& budget = {});

DyadicEnclosure embed(const PointedBackend& p, const Element& x, unsigned n, const Budget& budget = {});

/// Memoized beta_n for one element. Level n+1 is found among
/// {2 beta_n, 2 beta_n + 1} with a single comparison.
class RankStream final : public StreamSource {
public:
    RankStream(PointedBackend p, const Element& x, Budget budget = {});

    const Integer& beta(unsigned n);

    Enclosure at(unsigned level) override;
    unsigned width_bits() const override { return 0; }
    std::unique_ptr<StreamSource> clone() const override { return std::make_unique<RankStream>(*this); }

private:
    bool accepts(const Element& shifted) const;

    PointedBackend pointed_;
    Element x_;       // in the normalized view
    Budget budget_;
    bool positive_;
    std::vector<Integer> betas_;
    Element scaled_;  // 2^(betas_.size() - 1) * x
};

/// Image of x in the terminal object (R, 1) as a stream of enclosures
/// [beta_n / 2^n, (beta_n + 1) / 2^n].
RealStream real_of(const PointedBackend& p, const Element& x, const Budget& budget = {});

/// Element l of a pointed dyadic chain with |real_of(l) - target| <= 2^-n:
/// bisects between -k*a and k*a, where k is the first power of two above
/// the target, and returns the nearer end of the final 2^-n bracket.
/// Throws BudgetExhausted when no k <= 2^max_gallop bounds the target.
Element approximate_supremum(const PointedBackend& p, RealStream& target, unsigned n, const Budget& budget = {});

} // namespace ordsemi
