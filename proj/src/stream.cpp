#include "ordsemi/stream.hpp"

namespace ordsemi {
namespace {

class ExactSource final : public StreamSource {
public:
    explicit ExactSource(Rational q) : q_(std::move(q)) {}

    Enclosure at(unsigned level) override { return Enclosure::outward(q_, q_, level); }
    unsigned width_bits() const override { return 0; }
    std::unique_ptr<StreamSource> clone() const override { return std::make_unique<ExactSource>(*this); }

private:
    Rational q_;
};

} // namespace

bool Enclosure::contains(const Rational& q) const { return lower() <= q && q <= upper(); }

bool Enclosure::overlaps(const Enclosure& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
}

Enclosure Enclosure::outward(const Rational& lower, const Rational& upper, unsigned level) {
    return Enclosure{floor_scaled(lower, level), ceil_scaled(upper, level), level};
}

RealStream RealStream::exact(const Rational& q) { return RealStream(std::make_unique<ExactSource>(q)); }

ComparisonOutcome compare_reals(RealStream& s, RealStream& t, const Budget& budget) {
    using K = ComparisonOutcome::Kind;
    for (unsigned level = 0; level <= budget.max_level(); ++level) {
        const Enclosure a = s.at(level);
        const Enclosure b = t.at(level);
        if (a.upper() < b.lower()) return {K::Less, level};
        if (b.upper() < a.lower()) return {K::Greater, level};
    }
    return {K::Indistinguishable, budget.max_level()};
}

} // namespace ordsemi
