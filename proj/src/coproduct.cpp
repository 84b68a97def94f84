#include "ordsemi/coproduct.hpp"

namespace ordsemi {

FormalSum::FormalSum(FamilyPtr family, std::map<std::size_t, Element> terms)
    : family_(std::move(family)), terms_(std::move(terms)) {
    if (!family_) throw PreconditionViolation("formal sum without a family");
    if (terms_.empty()) throw PreconditionViolation("a formal sum needs at least one term");
    for (const auto& [index, x] : terms_) {
        auto it = family_->find(index);
        if (it == family_->end())
            throw PreconditionViolation("family has no member with index " + std::to_string(index));
        if (!it->second.backend()->owns(x))
            throw BackendMismatch("term " + std::to_string(index) + " does not belong to its member backend");
    }
}

FormalSum FormalSum::single(FamilyPtr family, std::size_t index, const Element& x) {
    return FormalSum(std::move(family), {{index, x}});
}

FormalSum sum_add(const FormalSum& x, const FormalSum& y) {
    if (x.family() != y.family()) throw BackendMismatch("formal sums over different families");
    std::map<std::size_t, Element> terms = x.terms();
    for (const auto& [index, e] : y.terms()) {
        auto it = terms.find(index);
        if (it == terms.end())
            terms.emplace(index, e);
        else
            it->second = x.family()->at(index).backend()->compose(it->second, e);
    }
    return FormalSum(x.family(), std::move(terms));
}

FormalSum sum_multiple(const Integer& m, const FormalSum& x) {
    std::map<std::size_t, Element> terms;
    for (const auto& [index, e] : x.terms())
        terms.emplace(index, multiple(*x.family()->at(index).backend(), m, e));
    return FormalSum(x.family(), std::move(terms));
}

Integer gamma(unsigned n, const FormalSum& x, const Budget& budget) {
    Integer total = 0;
    for (const auto& [index, e] : x.terms()) total += beta(n, x.family()->at(index), e, budget);
    return total;
}

std::string_view to_string(PrecedesVerdict::Kind k) noexcept {
    switch (k) {
    case PrecedesVerdict::Kind::Precedes: return "Precedes";
    case PrecedesVerdict::Kind::Succeeds: return "Succeeds";
    case PrecedesVerdict::Kind::IncomparableUpTo: return "IncomparableUpTo";
    }
    return "?";
}

GammaScanner::GammaScanner(const FormalSum& x, const Budget& budget) {
    streams_.reserve(x.support());
    for (const auto& [index, e] : x.terms()) streams_.emplace_back(x.family()->at(index), e, budget);
}

Integer GammaScanner::gamma(unsigned n) {
    Integer total = 0;
    for (RankStream& s : streams_) total += s.beta(n);
    return total;
}

PrecedesVerdict precedes(const FormalSum& x, const FormalSum& y, const Budget& budget) {
    if (x.family() != y.family()) throw BackendMismatch("formal sums over different families");
    GammaScanner gx(x, budget);
    GammaScanner gy(y, budget);
    const Integer dx(static_cast<unsigned long>(x.support()));
    const Integer dy(static_cast<unsigned long>(y.support()));
    for (unsigned n = 0; n <= budget.max_level(); ++n) {
        const Integer a = gx.gamma(n);
        const Integer b = gy.gamma(n);
        if (a + dx + 1 <= b) return {PrecedesVerdict::Kind::Precedes, n};
        if (b + dy + 1 <= a) return {PrecedesVerdict::Kind::Succeeds, n};
    }
    return {PrecedesVerdict::Kind::IncomparableUpTo, budget.max_level()};
}

namespace {

class SumSource final : public StreamSource {
public:
    SumSource(const FormalSum& x, const Budget& budget) : scanner_(x, budget) {
        width_bits_ = static_cast<unsigned>(ceil_log2(Integer(static_cast<unsigned long>(scanner_.support() + 1))));
    }

    Enclosure at(unsigned level) override {
        Integer g = scanner_.gamma(level);
        Integer hi = g + static_cast<unsigned long>(scanner_.support()) + 1;
        return Enclosure{std::move(g), std::move(hi), level};
    }
    unsigned width_bits() const override { return width_bits_; }
    std::unique_ptr<StreamSource> clone() const override { return std::make_unique<SumSource>(*this); }

private:
    GammaScanner scanner_;
    unsigned width_bits_ = 0;
};

} // namespace

RealStream sum_to_terminal(const FormalSum& x, const Budget& budget) {
    return RealStream(std::make_unique<SumSource>(x, budget));
}

std::optional<Sign> sum_sign(const FormalSum& x, const Budget& budget) {
    switch (precedes(x, sum_add(x, x), budget).kind) {
    case PrecedesVerdict::Kind::Precedes: return Sign::Positive;
    case PrecedesVerdict::Kind::Succeeds: return Sign::Negative;
    case PrecedesVerdict::Kind::IncomparableUpTo: break;
    }
    return std::nullopt;
}

AnomalousVerdict non_anomalous_at_depth(const FormalSum& x, const FormalSum& y, unsigned depth,
                                        const Budget& budget) {
    const PrecedesVerdict order = precedes(x, y, budget);
    if (order.kind == PrecedesVerdict::Kind::IncomparableUpTo)
        throw PreconditionViolation("sums are incomparable up to level " + std::to_string(order.level));
    const bool x_smaller = order.kind == PrecedesVerdict::Kind::Precedes;
    const FormalSum& small = x_smaller ? x : y;
    const FormalSum& large = x_smaller ? y : x;

    const auto s_small = sum_sign(small, budget);
    const auto s_large = sum_sign(large, budget);
    if (!s_small || !s_large || *s_small != *s_large || *s_small == Sign::Identity)
        throw PreconditionViolation("sums must both be positive or both negative");
    const bool positive = *s_small == Sign::Positive;

    for (unsigned n = 1; n <= depth; ++n) {
        const Integer k(n);
        const FormalSum lhs = positive ? sum_multiple(k, large) : sum_multiple(k + 1, large);
        const FormalSum rhs = positive ? sum_multiple(k + 1, small) : sum_multiple(k, small);
        // Positive: n*l < (n+1)*s. Negative: (n+1)*l < n*s.
        if (precedes(lhs, rhs, budget).kind != PrecedesVerdict::Kind::Precedes)
            return AnomalousVerdict::not_anomalous(n);
    }
    return AnomalousVerdict::anomalous_up_to(depth);
}

unsigned ElementaryTable::operator()(std::size_t m, std::size_t n, std::size_t p, std::size_t q) const {
    const std::size_t s = bound_ + 1;
    if (m >= s || n >= s || p >= s || q >= s) throw PreconditionViolation("table index out of range");
    return values_[((m * s + n) * s + p) * s + q];
}

ElementaryTable elementary_table(const PointedBackend& p, const Element& b, std::size_t bound) {
    const Backend& order = p.order();
    const Element& a = p.order_basepoint();
    const Element gb = p.to_order(b);
    const std::size_t s = bound + 1;

    // combos[m*s + n] = (m+1) a + (n+1) b
    std::vector<Element> a_multiples;
    std::vector<Element> b_multiples;
    a_multiples.reserve(s);
    b_multiples.reserve(s);
    a_multiples.push_back(a);
    b_multiples.push_back(gb);
    for (std::size_t i = 1; i < s; ++i) {
        a_multiples.push_back(order.compose(a_multiples.back(), a));
        b_multiples.push_back(order.compose(b_multiples.back(), gb));
    }
    std::vector<Element> combos;
    combos.reserve(s * s);
    for (std::size_t m = 0; m < s; ++m)
        for (std::size_t n = 0; n < s; ++n) combos.push_back(order.compose(a_multiples[m], b_multiples[n]));

    std::vector<unsigned char> values(s * s * s * s);
    for (std::size_t i = 0; i < s * s; ++i)
        for (std::size_t j = 0; j < s * s; ++j) {
            auto o = order.compare(combos[i], combos[j]);
            values[i * s * s + j] = o == std::strong_ordering::greater ? 2 : o == std::strong_ordering::equal ? 1 : 0;
        }
    return ElementaryTable(bound, std::move(values));
}

} // namespace ordsemi
