#include "ordsemi/rank.hpp"

#include "ordsemi/exemplars.hpp"

namespace ordsemi {
namespace {

BackendPtr normalized_backend(const BackendPtr& backend, const Element& basepoint) {
    backend->require_owned(basepoint);
    switch (sign(*backend, basepoint)) {
    case Sign::Positive: return backend;
    case Sign::Negative: return dualize(backend);
    case Sign::Identity: break;
    }
    throw PreconditionViolation("basepoint must not be an identity element");
}

void require_non_anomalous(const PointedBackend& p) {
    if (!p.backend()->flags().non_anomalous)
        throw PreconditionViolation("rank functions need a non-anomalous backend; " + p.backend()->name() +
                                    " is not");
}

bool accepts_nonnegative(const Backend& b, const Element& e) { return sign(b, e) != Sign::Negative; }

} // namespace

PointedBackend::PointedBackend(BackendPtr backend, Element basepoint)
    : backend_(std::move(backend)),
      order_(normalized_backend(backend_, basepoint)),
      basepoint_(std::move(basepoint)),
      order_basepoint_(to_order(basepoint_)) {}

Element PointedBackend::to_order(const Element& x) const {
    backend_->require_owned(x);
    if (!dualized()) return x;
    if (auto d = std::dynamic_pointer_cast<const DualBackend>(order_); d && d->primal() == backend_)
        return d->lift(x);
    return std::dynamic_pointer_cast<const DualBackend>(backend_)->lower(x);
}

Element PointedBackend::from_order(const Element& x) const {
    order_->require_owned(x);
    if (!dualized()) return x;
    if (auto d = std::dynamic_pointer_cast<const DualBackend>(order_); d && d->primal() == backend_)
        return d->lower(x);
    return std::dynamic_pointer_cast<const DualBackend>(backend_)->lift(x);
}

bool DyadicEnclosure::contains(const DyadicEnclosure& inner) const {
    return lower() <= inner.lower() && inner.upper() <= upper();
}

Integer beta(unsigned n, const PointedBackend& p, const Element& x, const Budget& budget) {
    require_non_anomalous(p);
    const Backend& b = p.order();
    const Element& a = p.order_basepoint();
    const Element scaled = multiple(b, pow2(n), p.to_order(x));

    if (sign(b, scaled) == Sign::Positive) {
        if (b.compare(scaled, a) == std::strong_ordering::less) return 0;
        return archimedean_floor(b, scaled, a, budget);
    }
    return -least_shift(
        b, scaled, a, [&](const Element& e) { return accepts_nonnegative(b, e); }, budget);
}

DyadicEnclosure embed(const PointedBackend& p, const Element& x, unsigned n, const Budget& budget) {
    return DyadicEnclosure{DyadicApproximant{beta(n, p, x, budget), n}};
}

// ---------------------------------------------------------------------------

RankStream::RankStream(PointedBackend p, const Element& x, Budget budget)
    : pointed_(std::move(p)), x_(pointed_.to_order(x)), budget_(budget), scaled_(x_) {
    require_non_anomalous(pointed_);
    positive_ = sign(pointed_.order(), x_) == Sign::Positive;
    betas_.push_back(ordsemi::beta(0, pointed_, x, budget_));
}

bool RankStream::accepts(const Element& shifted) const { return accepts_nonnegative(pointed_.order(), shifted); }

const Integer& RankStream::beta(unsigned n) {
    const Backend& b = pointed_.order();
    const Element& a = pointed_.order_basepoint();
    while (betas_.size() <= n) {
        scaled_ = b.compose(scaled_, scaled_);
        const Integer& prev = betas_.back();
        Integer next = 2 * prev;
        if (positive_) {
            // 2^(k+1) x >= (2 beta_k + 1) a ?
            const Integer cand = next + 1;
            if (b.compare(multiple(b, cand, a), scaled_) != std::strong_ordering::greater) next = cand;
        } else if (prev != 0) {
            // beta = -m; try m' = 2m - 1.
            const Integer m = -next - 1;
            if (accepts(b.compose(scaled_, multiple(b, m, a)))) next = -m;
        }
        betas_.push_back(std::move(next));
    }
    return betas_[n];
}

Enclosure RankStream::at(unsigned level) {
    const Integer& lo = beta(level);
    return Enclosure{lo, lo + 1, level};
}

RealStream real_of(const PointedBackend& p, const Element& x, const Budget& budget) {
    return RealStream(std::make_unique<RankStream>(p, x, budget));
}

// ---------------------------------------------------------------------------

Element approximate_supremum(const PointedBackend& p, RealStream& target, unsigned n, const Budget& budget) {
    const auto* chain = dynamic_cast<const DyadicChain*>(p.backend().get());
    if (!chain) throw PreconditionViolation("approximate_supremum needs a pointed dyadic chain");

    // Midpoint of an enclosure of width <= 2^-(n+2): within 2^-(n+3) of the target.
    const unsigned target_level = target.level_for(n + 2);
    const Enclosure t = target.at(target_level);
    const Rational c = (t.lower() + t.upper()) / 2;

    Integer k = 1;
    for (unsigned doublings = 0; Rational(k) <= abs(c); ++doublings) {
        if (doublings >= budget.max_gallop())
            throw BudgetExhausted("no multiple k*a bounds the target within " + std::to_string(budget.max_gallop()) +
                                  " doublings");
        k *= 2;
    }

    const unsigned cap = target_level + 2 + budget.max_level();
    // Image strictly below c? Uses the half-open rank cells.
    auto below = [&](const Element& e) {
        RankStream s(p, e, budget);
        for (unsigned level = 0; level <= cap; ++level) {
            const Integer& bl = s.beta(level);
            if (dyadic(Integer(bl + 1), level) <= c) return true;
            if (dyadic(bl, level) >= c) return false;
        }
        throw BudgetExhausted("bisection step undecided at level " + std::to_string(cap));
    };

    const Backend& b = *p.backend();
    Element hi = multiple(b, k, p.basepoint());
    Element lo = *b.inverse(hi);
    // Image width of [lo, hi] is 2k; halve down to 2^-n.
    Rational width(2 * k);
    const Rational goal = dyadic(1, n);
    while (width > goal) {
        Element mid = chain->halve(b.compose(lo, hi));
        if (below(mid))
            lo = std::move(mid);
        else
            hi = std::move(mid);
        width /= 2;
    }
    return below(chain->halve(b.compose(lo, hi))) ? hi : lo;
}

} // namespace ordsemi
