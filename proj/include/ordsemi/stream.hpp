#pragma once

// Level-indexed dyadic enclosures of real numbers.

#include "ordsemi/order_core.hpp"

#include <memory>

namespace ordsemi {

/// Closed interval [lo / 2^level, hi / 2^level].
struct Enclosure {
    Integer lo;
    Integer hi;
    unsigned level = 0;

    Rational lower() const { return dyadic(lo, level); }
    Rational upper() const { return dyadic(hi, level); }
    Rational width() const { return dyadic(Integer(hi - lo), level); }

    bool contains(const Rational& q) const;
    bool overlaps(const Enclosure& other) const;
    bool positive() const { return sgn(lo) > 0; }
    bool negative() const { return sgn(hi) < 0; }

    /// Smallest enclosure on the 2^-level grid that contains [lower, upper].
    static Enclosure outward(const Rational& lower, const Rational& upper, unsigned level);

    friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

/// Producer behind a RealStream. Enclosures are nested in the level and
/// have width at most 2^(width_bits() - level).
class StreamSource {
public:
    virtual ~StreamSource() = default;
    virtual Enclosure at(unsigned level) = 0;
    virtual unsigned width_bits() const = 0;
    virtual std::unique_ptr<StreamSource> clone() const = 0;
};

/// A real number given by nested dyadic enclosures. Refinement mutates
/// per-instance memo tables: copies refine independently, and one instance
/// must not be refined from two threads at once.
class RealStream {
public:
    explicit RealStream(std::unique_ptr<StreamSource> source) : source_(std::move(source)) {}
    RealStream(const RealStream& other) : source_(other.source_->clone()) {}
    RealStream& operator=(const RealStream& other) {
        if (this != &other) source_ = other.source_->clone();
        return *this;
    }
    RealStream(RealStream&&) noexcept = default;
    RealStream& operator=(RealStream&&) noexcept = default;

    Enclosure at(unsigned level) { return source_->at(level); }
    unsigned width_bits() const { return source_->width_bits(); }

    /// Level at which the width bound drops to 2^-n.
    unsigned level_for(unsigned n) const { return n + width_bits(); }

    static RealStream exact(const Rational& q);

private:
    std::unique_ptr<StreamSource> source_;
};

/// Refines both streams from level 0 until their enclosures separate.
/// Never returns Equal; Indistinguishable carries budget.max_level().
ComparisonOutcome compare_reals(RealStream& s, RealStream& t, const Budget& budget = {});

} // namespace ordsemi
