#pragma once

// Field structure on the terminal object, realized on enclosure streams.
//
// A morphism of pointed non-anomalous semigroups is determined by the image
// of one non-identity element, and after embedding it acts as multiplication
// by a real scalar. Products, sums and reciprocals of streams are computed
// by interval arithmetic on refined inputs, then rounded outward to the
// 2^-(n+2) grid so that the level-n enclosure is at most 2^-n wide.

#include "ordsemi/rank.hpp"

#include <string>
#include <vector>

namespace ordsemi {

/// f : (A, a) -> B with f(a) = basepoint_image. The embeddings are
/// i = real_of(source_frame) and j = real_of(target), so the scalar is
/// lambda = j(f(a)) / i(a). When source_frame is the source itself,
/// i(a) = 1.
struct Morphism {
    PointedBackend source;
    PointedBackend target;
    Element basepoint_image;
    PointedBackend source_frame;

    Morphism(PointedBackend source, PointedBackend target, Element basepoint_image);
    Morphism(PointedBackend source, PointedBackend target, Element basepoint_image, PointedBackend source_frame);
};

struct HionScalar {
    RealStream lambda;
};

RealStream add(RealStream x, RealStream y);
RealStream negate(RealStream x);

/// Interval product with sign-case analysis. Inputs are refined to
/// n + magnitude bits + 3, where magnitudes come from the level-0
/// enclosures plus one.
RealStream multiply(RealStream x, RealStream y);

/// Stream of 1/x. The first level whose enclosure excludes zero is found
/// lazily; ZeroDivision is thrown when none exists up to max_level.
RealStream reciprocal(RealStream x, const Budget& budget = {});

/// Enclosure of 1/x with width at most 2^-n.
Enclosure invert(RealStream x, unsigned n, const Budget& budget = {});

/// Multiplies two closed intervals by the nine sign cases.
std::pair<Rational, Rational> interval_product(const Rational& a_lo, const Rational& a_hi, const Rational& b_lo,
                                               const Rational& b_hi);

HionScalar hion_lambda(const Morphism& m, const Budget& budget = {});

/// lambda * i(x): order-preserving for lambda > 0, reversing for lambda < 0.
RealStream apply_morphism(const Morphism& m, const Element& x, const Budget& budget = {});

struct FieldLawViolation {
    std::string law; // "associativity", "distributivity", "commutativity", "unit", "positivity"
    std::vector<std::size_t> indices;
};

struct FieldLawReport {
    std::size_t samples = 0;
    std::size_t triples = 0;
    std::size_t checks = 0;
    std::vector<FieldLawViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks the field laws at level n for every ordered triple of samples:
/// (ab)c ~ a(bc), (a+b)c ~ ac+bc, ab ~ ba, a*1 ~ a ~ 1*a, and that a product
/// of two positive enclosures separates from zero on the positive side.
/// `~` is enclosure overlap.
FieldLawReport field_law_check(const std::vector<RealStream>& samples, const RealStream& unit, unsigned n,
                               const Budget& budget = {});

} // namespace ordsemi
