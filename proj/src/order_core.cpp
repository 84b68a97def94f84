#include "ordsemi/order_core.hpp"

#include <atomic>

namespace ordsemi {
namespace {

std::atomic<std::uint64_t> next_backend_id{1};

bool is_greater(std::strong_ordering o) { return o == std::strong_ordering::greater; }
bool is_less(std::strong_ordering o) { return o == std::strong_ordering::less; }

std::strong_ordering flip(std::strong_ordering o) {
    if (is_less(o)) return std::strong_ordering::greater;
    if (is_greater(o)) return std::strong_ordering::less;
    return o;
}

} // namespace

std::string_view to_string(Sign s) noexcept {
    switch (s) {
    case Sign::Positive: return "Positive";
    case Sign::Negative: return "Negative";
    case Sign::Identity: return "Identity";
    }
    return "?";
}

std::string_view to_string(ComparisonOutcome::Kind k) noexcept {
    using K = ComparisonOutcome::Kind;
    switch (k) {
    case K::Less: return "Less";
    case K::Equal: return "Equal";
    case K::Greater: return "Greater";
    case K::Indistinguishable: return "Indistinguishable";
    }
    return "?";
}

std::string_view to_string(AnomalousVerdict::Kind k) noexcept {
    return k == AnomalousVerdict::Kind::AnomalousUpTo ? "AnomalousUpTo" : "NotAnomalous";
}

ComparisonOutcome ComparisonOutcome::from(std::strong_ordering o) noexcept {
    if (is_less(o)) return {Kind::Less, 0};
    if (is_greater(o)) return {Kind::Greater, 0};
    return {Kind::Equal, 0};
}

ComparisonOutcome ComparisonOutcome::reversed() const noexcept {
    switch (kind) {
    case Kind::Less: return {Kind::Greater, level};
    case Kind::Greater: return {Kind::Less, level};
    default: return *this;
    }
}

Budget::Budget(unsigned max_level, unsigned max_gallop) : max_level_(max_level), max_gallop_(max_gallop) {
    if (max_level == 0 || max_gallop == 0)
        throw PreconditionViolation("budget limits must be at least 1");
}

Backend::Backend() : id_{next_backend_id.fetch_add(1, std::memory_order_relaxed)} {}

void Backend::require_owned(const Element& x) const {
    if (!owns(x)) throw BackendMismatch("element does not belong to backend " + name());
}

Element Backend::compose(const Element& x, const Element& y) const {
    require_owned(x);
    require_owned(y);
    return make(compose_payloads(x.payload(), y.payload()));
}

std::strong_ordering Backend::compare(const Element& x, const Element& y) const {
    require_owned(x);
    require_owned(y);
    return compare_payloads(x.payload(), y.payload());
}

// ---------------------------------------------------------------------------

DualBackend::DualBackend(BackendPtr primal) : primal_(std::move(primal)) {}

std::string DualBackend::name() const { return "dual(" + primal_->name() + ")"; }

std::optional<Element> DualBackend::identity() const {
    auto e = primal_->identity();
    if (!e) return std::nullopt;
    return lift(*e);
}

std::optional<Element> DualBackend::inverse(const Element& x) const {
    auto inv = primal_->inverse(lower(x));
    if (!inv) return std::nullopt;
    return lift(*inv);
}

Element DualBackend::from_atom(const expr::Atom& atom) const { return lift(primal_->from_atom(atom)); }

std::string DualBackend::format(const Element& x) const { return primal_->format(lower(x)); }

Element DualBackend::lift(const Element& primal_element) const {
    primal_->require_owned(primal_element);
    return make(primal_element.payload());
}

Element DualBackend::lower(const Element& dual_element) const {
    require_owned(dual_element);
    return Element(primal_->id(), dual_element.payload());
}

Payload DualBackend::compose_payloads(const Payload& x, const Payload& y) const {
    return primal_->compose_payloads(x, y);
}

std::strong_ordering DualBackend::compare_payloads(const Payload& x, const Payload& y) const {
    return flip(primal_->compare_payloads(x, y));
}

BackendPtr dualize(BackendPtr backend) {
    // Dualizing a dual hands back the original backend, so elements keep
    // their identity across the round trip.
    if (auto d = std::dynamic_pointer_cast<const DualBackend>(backend)) return d->primal();
    return std::make_shared<DualBackend>(std::move(backend));
}

// ---------------------------------------------------------------------------

Element compose(const Backend& b, const Element& x, const Element& y) { return b.compose(x, y); }

ComparisonOutcome compare(const Backend& b, const Element& x, const Element& y, const Budget&) {
    return ComparisonOutcome::from(b.compare(x, y));
}

Element multiple(const Backend& b, const Integer& n, const Element& x) {
    b.require_owned(x);
    if (n < 1) throw PreconditionViolation("multiple requires n >= 1");
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Element acc = x;
    for (std::size_t i = bits - 1; i-- > 0;) {
        acc = b.compose(acc, acc);
        if (mpz_tstbit(n.get_mpz_t(), i)) acc = b.compose(acc, x);
    }
    return acc;
}

Sign sign(const Backend& b, const Element& x) {
    auto o = b.compare(b.compose(x, x), x);
    if (is_greater(o)) return Sign::Positive;
    if (is_less(o)) return Sign::Negative;
    return Sign::Identity;
}

namespace {

Sign common_sign(const Backend& b, const Element& x, const Element& y) {
    Sign sx = sign(b, x);
    Sign sy = sign(b, y);
    if (sx != sy || sx == Sign::Identity)
        throw PreconditionViolation("elements must share a sign (positive or negative)");
    return sx;
}

} // namespace

AnomalousVerdict is_anomalous_pair_at_depth(const Backend& b, const Element& x, const Element& y, unsigned depth,
                                            const Budget&) {
    if (!is_greater(b.compare(x, y))) throw PreconditionViolation("anomalous-pair query requires x > y");
    const Sign s = common_sign(b, x, y);

    // Positive: n*x < (n+1)*y for every n. Negative: n*y > (n+1)*x.
    const Element& big = s == Sign::Positive ? x : y;
    const Element& small = s == Sign::Positive ? y : x;
    Element lhs = big;                   // n * big
    Element rhs = b.compose(small, small); // (n+1) * small
    for (unsigned n = 1; n <= depth; ++n) {
        auto o = b.compare(lhs, rhs);
        bool holds = s == Sign::Positive ? is_less(o) : is_greater(o);
        if (!holds) return AnomalousVerdict::not_anomalous(n);
        lhs = b.compose(lhs, big);
        rhs = b.compose(rhs, small);
    }
    return AnomalousVerdict::anomalous_up_to(depth);
}

Integer archimedean_floor(const Backend& b, const Element& x, const Element& y, const Budget& budget) {
    const Sign s = common_sign(b, x, y);
    // `above(u, v)`: u lies strictly beyond v in the direction of the sign.
    auto above = [&](const Element& u, const Element& v) {
        auto o = b.compare(u, v);
        return s == Sign::Positive ? is_greater(o) : is_less(o);
    };
    if (above(y, x)) throw PreconditionViolation("archimedean_floor requires x >= y");

    std::vector<Element> powers{y}; // powers[k] = 2^k * y
    while (!above(powers.back(), x)) {
        if (powers.size() > budget.max_gallop())
            throw BudgetExhausted("no multiple 2^k*y exceeds x within " + std::to_string(budget.max_gallop()) +
                                  " doublings");
        powers.push_back(b.compose(powers.back(), powers.back()));
    }
    // 2^k*y > x >= 2^(k-1)*y with k = powers.size() - 1 >= 1.
    const std::size_t k = powers.size() - 1;
    Integer n = pow2(k - 1);
    Element acc = powers[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) {
        Element cand = b.compose(acc, powers[j]);
        if (!above(cand, x)) {
            acc = std::move(cand);
            n += pow2(j);
        }
    }
    return n;
}

Integer least_shift(const Backend& b, const Element& x, const Element& a,
                    const std::function<bool(const Element&)>& accept, const Budget& budget) {
    b.require_owned(x);
    b.require_owned(a);
    if (accept(x)) return 0;

    // Gallop over m = 2^k, keeping shifted[k] = x + 2^k*a and powers[k] = 2^k*a.
    std::vector<Element> powers{a};
    Element shifted = b.compose(x, a);
    Element previous = x; // x + 2^(k-1)*a, or x itself for k = 0
    std::size_t k = 0;
    while (!accept(shifted)) {
        if (k + 1 > budget.max_gallop())
            throw BudgetExhausted("no shift x + 2^k*a accepted within " + std::to_string(budget.max_gallop()) +
                                  " doublings");
        previous = shifted;
        powers.push_back(b.compose(powers.back(), powers.back()));
        ++k;
        shifted = b.compose(previous, powers[k - 1]);
    }
    if (k == 0) return 1;

    // accept fails at m0 = 2^(k-1) and holds at 2^k; lift the largest failing m.
    Integer m = pow2(k - 1);
    Element acc = previous;
    for (std::size_t j = k - 1; j-- > 0;) {
        Element cand = b.compose(acc, powers[j]);
        if (!accept(cand)) {
            acc = std::move(cand);
            m += pow2(j);
        }
    }
    return m + 1;
}

Integer positivize(const Backend& b, const Element& x, const Element& a, const Budget& budget) {
    if (sign(b, a) != Sign::Positive) throw PreconditionViolation("positivize requires a positive shift element");
    return least_shift(
        b, x, a, [&](const Element& e) { return sign(b, e) == Sign::Positive; }, budget);
}

bool lemma21_chain_holds(const Backend& b, const Element& x, const Element& y, unsigned n) {
    if (n == 0) throw PreconditionViolation("commutator chain requires n >= 1");
    const Element xy = b.compose(x, y);
    const Element yx = b.compose(y, x);
    if (!is_greater(b.compare(xy, yx))) throw PreconditionViolation("chain requires xy > yx");

    const Integer k(n);
    const Element xn = multiple(b, k, x);
    const Element yn = multiple(b, k, y);
    const Element outer_hi = b.compose(xn, yn);
    const Element outer_lo = b.compose(yn, xn);
    const Element mid_hi = multiple(b, k, xy);
    const Element mid_lo = multiple(b, k, yx);

    auto first = b.compare(outer_hi, mid_hi);
    auto middle = b.compare(mid_hi, mid_lo);
    auto last = b.compare(mid_lo, outer_lo);
    if (!is_greater(middle)) return false;
    if (n == 1) return !is_less(first) && !is_less(last);
    return is_greater(first) && is_greater(last);
}

AxiomReport check_axioms_on_sample(const Backend& b, std::span<const Element> elements) {
    AxiomReport report;
    report.elements = elements.size();
    const std::size_t n = elements.size();

    std::vector<std::strong_ordering> order(n * n, std::strong_ordering::equal);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) order[i * n + j] = b.compare(elements[i], elements[j]);

    for (std::size_t i = 0; i < n; ++i) {
        if (order[i * n + i] != std::strong_ordering::equal) report.violations.push_back({"trichotomy", {i, i}});
        for (std::size_t j = i + 1; j < n; ++j)
            if (order[i * n + j] != flip(order[j * n + i])) report.violations.push_back({"trichotomy", {i, j}});
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Element xy = b.compose(elements[i], elements[j]);
            for (std::size_t k = 0; k < n; ++k) {
                ++report.triples;
                const auto ij = order[i * n + j];
                const auto jk = order[j * n + k];
                const auto ik = order[i * n + k];
                if (is_less(ij) && is_less(jk) && !is_less(ik))
                    report.violations.push_back({"transitivity", {i, j, k}});

                const Element left = b.compose(xy, elements[k]);
                const Element right = b.compose(elements[i], b.compose(elements[j], elements[k]));
                if (b.compare(left, right) != std::strong_ordering::equal)
                    report.violations.push_back({"associativity", {i, j, k}});

                // x ? y must survive composing with z on either side.
                const auto r = b.compare(b.compose(elements[i], elements[k]), b.compose(elements[j], elements[k]));
                const auto l = b.compare(b.compose(elements[k], elements[i]), b.compose(elements[k], elements[j]));
                if (r != ij || l != ij) report.violations.push_back({"translation", {i, j, k}});
            }
        }
    }
    return report;
}

} // namespace ordsemi
