#include "ordsemi/sampling.hpp"

#include "ordsemi/exemplars.hpp"

namespace ordsemi {

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

Element random_element(const Backend& b, std::mt19937_64& rng) {
    auto z = [&](std::int64_t lo, std::int64_t hi) { return Integer(static_cast<long>(draw(rng, lo, hi))); };

    if (const auto* d = dynamic_cast<const DualBackend*>(&b)) return d->lift(random_element(*d->primal(), rng));
    if (const auto* r = dynamic_cast<const RationalLinear*>(&b)) {
        const bool positives = r->variant() == RationalLinear::Variant::Positives;
        Rational q(positives ? z(1, 60) : z(-60, 60), z(1, 40));
        q.canonicalize();
        return r->element(q);
    }
    if (const auto* q = dynamic_cast<const QuadraticSlope*>(&b)) {
        Integer m = z(0, 40);
        Integer n = z(0, 40);
        if (m == 0 && n == 0) m = 1;
        return q->element(m, n);
    }
    if (const auto* c = dynamic_cast<const DyadicChain*>(&b))
        return c->element(dyadic(z(-600, 600), static_cast<unsigned long>(draw(rng, 0, 10))));
    if (const auto* l = dynamic_cast<const LexZ2*>(&b)) return l->element(z(-20, 20), z(-20, 20));
    if (const auto* h = dynamic_cast<const HeisenbergLex*>(&b)) return h->element(z(-8, 8), z(-8, 8), z(-8, 8));
    if (const auto* n = dynamic_cast<const Naturals*>(&b)) return n->element(z(1, 100));
    throw PreconditionViolation("no sampler for backend " + b.name());
}

} // namespace ordsemi
