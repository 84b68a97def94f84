#pragma once

// Formal sums over a finite family of pointed backends and the weak order
//
//     x < y  iff  gamma_n(x) + d(x) + 1 <= gamma_n(y) for some n,
//
// where gamma_n sums the rank functions of the terms and d(x) is the number
// of terms. Incomparable sums are the ones identified in the quotient; the
// quotient itself is only ever materialized as the RealStream image.

#include "ordsemi/rank.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

namespace ordsemi {

using Family = std::map<std::size_t, PointedBackend>;
using FamilyPtr = std::shared_ptr<const Family>;

class FormalSum {
public:
    /// Throws PreconditionViolation for an empty sum, an unknown index or a
    /// term that does not belong to its member backend.
    FormalSum(FamilyPtr family, std::map<std::size_t, Element> terms);

    /// The image of one member element, p_i(x).
    static FormalSum single(FamilyPtr family, std::size_t index, const Element& x);

    const FamilyPtr& family() const noexcept { return family_; }
    const std::map<std::size_t, Element>& terms() const noexcept { return terms_; }
    std::size_t support() const noexcept { return terms_.size(); }

    friend bool operator==(const FormalSum& a, const FormalSum& b) {
        return a.family_ == b.family_ && a.terms_ == b.terms_;
    }

private:
    FamilyPtr family_;
    std::map<std::size_t, Element> terms_;
};

FormalSum sum_add(const FormalSum& x, const FormalSum& y);

/// m-fold sum, m >= 1.
FormalSum sum_multiple(const Integer& m, const FormalSum& x);

Integer gamma(unsigned n, const FormalSum& x, const Budget& budget = {});

struct PrecedesVerdict {
    enum class Kind { Precedes, Succeeds, IncomparableUpTo };

    Kind kind = Kind::IncomparableUpTo;
    unsigned level = 0; // least witnessing n, or the budget level

    friend bool operator==(const PrecedesVerdict&, const PrecedesVerdict&) = default;
};

std::string_view to_string(PrecedesVerdict::Kind k) noexcept;

/// Incremental gamma_n for one sum; shares the memoized rank streams.
class GammaScanner {
public:
    GammaScanner(const FormalSum& x, const Budget& budget);

    Integer gamma(unsigned n);
    std::size_t support() const noexcept { return streams_.size(); }

private:
    std::vector<RankStream> streams_;
};

/// Scans n = 0..max_level for gamma_n(x) + d(x) + 1 <= gamma_n(y) or the
/// mirror inequality and reports the least witnessing level.
PrecedesVerdict precedes(const FormalSum& x, const FormalSum& y, const Budget& budget = {});

/// Stream with level-n enclosure [gamma_n, gamma_n + d + 1] / 2^n.
RealStream sum_to_terminal(const FormalSum& x, const Budget& budget = {});

/// Sign of a sum in the weak order: compares x against 2x.
/// Returns nullopt when the two are incomparable within the budget.
std::optional<Sign> sum_sign(const FormalSum& x, const Budget& budget = {});

/// With x, y ordered by precedes (smaller s, larger l), scans n = 1..depth
/// for the first n at which n*l < (n+1)*s is not certified (positive sums)
/// or (n+1)*l < n*s is not certified (negative sums). Throws
/// PreconditionViolation when x, y are incomparable or not of one sign.
AnomalousVerdict non_anomalous_at_depth(const FormalSum& x, const FormalSum& y, unsigned depth,
                                        const Budget& budget = {});

/// f(m,n,p,q) = 2, 1, 0 as m*a + n*b is greater than, equal to or less
/// than p*a + q*b, for coefficients 0..bound.
class ElementaryTable {
public:
    ElementaryTable(std::size_t bound, std::vector<unsigned char> values)
        : bound_(bound), values_(std::move(values)) {}

    std::size_t bound() const noexcept { return bound_; }
    unsigned operator()(std::size_t m, std::size_t n, std::size_t p, std::size_t q) const;

    friend bool operator==(const ElementaryTable&, const ElementaryTable&) = default;

private:
    std::size_t bound_;
    std::vector<unsigned char> values_;
};

/// Builds the table for the semigroup generated by the basepoint a and b.
/// Comparisons are made after adding a + b to both sides, so the (0, 0)
/// combination needs no identity element.
ElementaryTable elementary_table(const PointedBackend& p, const Element& b, std::size_t bound);

} // namespace ordsemi
