#include "ordsemi/exemplars.hpp"
#include "ordsemi/rank.hpp"
#include "ordsemi/sampling.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ordsemi;

namespace {

const auto Q = std::make_shared<RationalLinear>();
const auto D = std::make_shared<DyadicChain>();

Element q(long n, long d = 1) { return Q->element(Rational(n, d)); }

PointedBackend rational_at(long n, long d = 1) { return PointedBackend(Q, q(n, d)); }

// Exact value of x / a for the backends with a rational or quadratic model.
struct Model {
    PointedBackend point;
    std::optional<QuadraticIrrational> lambda;

    Integer beta(unsigned n, const Element& x) const {
        if (!lambda) return oracle::beta(n, x.rational(), point.basepoint().rational());
        const Tuple& t = x.tuple();
        const Tuple& a = point.basepoint().tuple();
        return oracle::quadratic_beta(n, t[0], t[1], a[0], a[1], lambda->p, lambda->q, lambda->d);
    }
};

std::vector<Model> models() {
    std::vector<Model> out;
    out.push_back({rational_at(1), std::nullopt});
    out.push_back({rational_at(3, 7), std::nullopt});
    out.push_back({rational_at(-2, 5), std::nullopt});
    out.push_back({PointedBackend(D, D->element(Rational(3, 8))), std::nullopt});
    for (const QuadraticIrrational& l : {QuadraticIrrational{0, 1, 2}, QuadraticIrrational{0, 1, 3},
                                         QuadraticIrrational{Rational(1, 2), Rational(1, 2), 5}}) {
        const auto b = std::make_shared<QuadraticSlope>(l);
        out.push_back({PointedBackend(b, b->element(1, 0)), l});
        out.push_back({PointedBackend(b, b->element(2, 3)), l});
    }
    return out;
}

std::vector<Element> sample(const Backend& b, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Element> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_element(b, rng));
    return out;
}

} // namespace

TEST(Beta, Examples) {
    EXPECT_EQ(beta(4, rational_at(1), q(1, 3)), 5);
    EXPECT_EQ(beta(2, rational_at(1), q(-1, 3)), -2);
    EXPECT_EQ(beta(0, rational_at(1), q(0)), 0);
    EXPECT_EQ(beta(3, rational_at(1), q(-1, 2)), -4);
    for (const Model& m : models()) EXPECT_EQ(beta(6, m.point, m.point.basepoint()), 64);
}

TEST(Beta, NegativeBasepointUsesTheDual) {
    const PointedBackend p = rational_at(-1);
    EXPECT_TRUE(p.dualized());
    EXPECT_EQ(beta(4, p, q(1, 3)), -6);
    EXPECT_EQ(beta(4, p, q(-1, 3)), 5);
    EXPECT_EQ(p.from_order(p.to_order(q(2, 9))), q(2, 9));

    // A dual backend pointed below its identity normalizes back to the primal.
    const BackendPtr dual = dualize(Q);
    const auto* d = dynamic_cast<const DualBackend*>(dual.get());
    const PointedBackend pd(dual, d->lift(q(1)));
    EXPECT_EQ(beta(4, pd, d->lift(q(1, 3))), 5);
}

TEST(Beta, Preconditions) {
    EXPECT_THROW(PointedBackend(Q, q(0)), PreconditionViolation);
    const auto lex = std::make_shared<LexZ2>();
    const PointedBackend p(lex, lex->element(1, 0));
    EXPECT_THROW(beta(2, p, lex->element(0, 1)), PreconditionViolation);
    EXPECT_THROW(beta(2, rational_at(1), D->element(1)), BackendMismatch);
}

TEST(Beta, AgreesWithOracles) {
    for (const Model& m : models()) {
        for (const Element& x : sample(*m.point.backend(), 60, 31)) {
            for (unsigned n : {0u, 1u, 5u, 13u, 30u}) EXPECT_EQ(beta(n, m.point, x), m.beta(n, x)) << n;
        }
    }
}

TEST(Beta, StreamMatchesDirectComputation) {
    for (const Model& m : models()) {
        for (const Element& x : sample(*m.point.backend(), 15, 8)) {
            RankStream s(m.point, x);
            for (unsigned n = 0; n <= 24; ++n) ASSERT_EQ(s.beta(n), beta(n, m.point, x)) << n;
        }
    }
}

TEST(Beta, RankIdentities) {
    for (const Model& m : models()) {
        const Backend& b = *m.point.backend();
        for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(beta(n, m.point, m.point.basepoint()), pow2(n));
        const auto xs = sample(b, 12, 77);
        for (const Element& x : xs) {
            RankStream sx(m.point, x);
            for (unsigned n = 0; n <= 8; ++n)
                for (unsigned k = 0; k <= 6; ++k) {
                    const Integer lhs = pow2(k) * sx.beta(n);
                    EXPECT_LE(lhs, sx.beta(n + k));
                    EXPECT_LT(sx.beta(n + k), pow2(k) + lhs);
                }
            for (const Element& y : xs) {
                for (unsigned n = 0; n <= 8; ++n) {
                    const Integer bx = beta(n, m.point, x);
                    const Integer by = beta(n, m.point, y);
                    const Integer bxy = beta(n, m.point, b.compose(x, y));
                    EXPECT_LE(bx + by, bxy);
                    EXPECT_LE(bxy, bx + by + 1);
                }
                if (m.point.order().compare(m.point.to_order(x), m.point.to_order(y)) != std::strong_ordering::greater)
                    continue;
                RankStream sy(m.point, y);
                bool separated = false;
                for (unsigned n = 0; n <= 64 && !separated; ++n) separated = sy.beta(n) + 1 < sx.beta(n);
                EXPECT_TRUE(separated);
            }
        }
    }
}

TEST(Embed, Examples) {
    const PointedBackend p = rational_at(1);
    const DyadicEnclosure e = embed(p, q(1, 3), 4);
    EXPECT_EQ(e.lower(), Rational(5, 16));
    EXPECT_EQ(e.upper(), Rational(3, 8));
    EXPECT_TRUE(e.contains(Rational(1, 3)));
    EXPECT_FALSE(e.contains(Rational(3, 8)));
    for (unsigned n = 0; n <= 10; ++n) {
        const DyadicEnclosure a = embed(p, q(1), n);
        EXPECT_EQ(a.lower(), 1);
        EXPECT_EQ(a.upper(), 1 + dyadic(1, n));
    }
    const DyadicEnclosure two = embed(p, q(2), 3);
    EXPECT_EQ(two.lower(), 2);
    EXPECT_EQ(two.upper(), Rational(17, 8));
}

TEST(Embed, SoundAndNested) {
    for (const Model& m : models()) {
        if (m.lambda) continue;
        const Rational a = m.point.basepoint().rational();
        for (const Element& x : sample(*m.point.backend(), 40, 12)) {
            const Rational ratio = x.rational() / a;
            for (unsigned n = 0; n <= 30; ++n) {
                const DyadicEnclosure e = embed(m.point, x, n);
                EXPECT_TRUE(e.contains(ratio));
                EXPECT_EQ(e.upper() - e.lower(), dyadic(1, n));
                if (n > 0) EXPECT_TRUE(embed(m.point, x, n - 1).contains(e));
            }
        }
    }
}

TEST(RealOf, Examples) {
    const PointedBackend p = rational_at(1);
    RealStream half = real_of(p, q(1, 2));
    const Enclosure e = half.at(3);
    EXPECT_EQ(e.lower(), Rational(1, 2));
    EXPECT_EQ(e.upper(), Rational(5, 8));
    RealStream third = real_of(p, q(1, 3));
    EXPECT_TRUE(third.at(30).contains(Rational(1, 3)));
    RealStream unit = real_of(p, q(1));
    for (unsigned n = 0; n < 40; ++n) EXPECT_EQ(unit.at(n), (Enclosure{pow2(n), pow2(n) + 1, n}));
}

TEST(RealOf, EmbeddingsAgreeingAtBasepointAgree) {
    // (Q, 1/2) and (Q, 1/2) built from different backends give identical streams.
    const auto other = std::make_shared<RationalLinear>();
    const PointedBackend p1(Q, q(1, 2));
    const PointedBackend p2(other, other->element(Rational(1, 2)));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        const Rational r = oracle::random_rational(rng, -90, 90, 30);
        RealStream s1 = real_of(p1, Q->element(r));
        RealStream s2 = real_of(p2, other->element(r));
        for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(s1.at(n), s2.at(n));
    }
}

TEST(CompareReals, Examples) {
    const PointedBackend p = rational_at(1);
    RealStream third = real_of(p, q(1, 3));
    RealStream half = real_of(p, q(1, 2));
    const ComparisonOutcome o = compare_reals(third, half);
    EXPECT_EQ(o.kind, ComparisonOutcome::Kind::Less);
    EXPECT_LE(o.level, 4u);

    RealStream same = real_of(p, q(1, 3));
    EXPECT_EQ(compare_reals(third, same), (ComparisonOutcome{ComparisonOutcome::Kind::Indistinguishable, 64}));
    EXPECT_EQ(compare_reals(third, same, Budget(10, 10)).level, 10u);

    RealStream a = real_of(p, q(1));
    RealStream two = real_of(p, q(2));
    const ComparisonOutcome o2 = compare_reals(a, two);
    EXPECT_EQ(o2.kind, ComparisonOutcome::Kind::Less);
    EXPECT_LE(o2.level, 1u);
    EXPECT_EQ(compare_reals(two, a).kind, ComparisonOutcome::Kind::Greater);
}

TEST(CompareReals, MonotoneUnderEmbedding) {
    for (const Model& m : models()) {
        const Backend& b = *m.point.backend();
        const auto xs = sample(b, 12, 55);
        for (const Element& x : xs)
            for (const Element& y : xs) {
                RealStream sx = real_of(m.point, x);
                RealStream sy = real_of(m.point, y);
                const auto o = compare_reals(sx, sy, Budget(40, 256));
                const auto exact = b.compare(x, y);
                // A negative basepoint reverses the embedding.
                const auto oriented = m.point.dualized() ? 0 <=> exact : exact;
                if (oriented == std::strong_ordering::less) EXPECT_NE(o.kind, ComparisonOutcome::Kind::Greater);
                if (oriented == std::strong_ordering::greater) EXPECT_NE(o.kind, ComparisonOutcome::Kind::Less);
                if (oriented == std::strong_ordering::equal)
                    EXPECT_EQ(o.kind, ComparisonOutcome::Kind::Indistinguishable);
            }
    }
}

TEST(Enclosure, Outward) {
    const Enclosure e = Enclosure::outward(Rational(1, 3), Rational(2, 3), 3);
    EXPECT_EQ(e, (Enclosure{2, 6, 3}));
    EXPECT_TRUE(e.contains(Rational(1, 3)));
    EXPECT_TRUE(e.overlaps(Enclosure{6, 7, 3}));
    EXPECT_FALSE(e.overlaps(Enclosure{13, 14, 4}));
    RealStream exact = RealStream::exact(Rational(-1, 3));
    for (unsigned n = 0; n < 20; ++n) {
        const Enclosure en = exact.at(n);
        EXPECT_TRUE(en.contains(Rational(-1, 3)));
        EXPECT_LE(en.width(), dyadic(1, n));
    }
}

TEST(Supremum, Examples) {
    const PointedBackend chain(D, D->element(1));
    const PointedBackend p = rational_at(1);
    RealStream three_quarters = real_of(p, q(3, 4));
    EXPECT_EQ(approximate_supremum(chain, three_quarters, 10), D->element(Rational(3, 4)));
    RealStream third = real_of(p, q(1, 3));
    EXPECT_EQ(approximate_supremum(chain, third, 10), D->element(Rational(341, 1024)));
    RealStream minus_third = real_of(p, q(-1, 3));
    EXPECT_EQ(approximate_supremum(chain, minus_third, 10), D->element(Rational(-341, 1024)));
}

TEST(Supremum, WithinToleranceForOtherBasepoints) {
    const PointedBackend chain(D, D->element(Rational(-3, 4)));
    const PointedBackend p = rational_at(1);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const Rational t = oracle::random_rational(rng, -500, 500, 97);
        RealStream target = real_of(p, Q->element(t));
        const Element l = approximate_supremum(chain, target, 16);
        const Rational image = l.rational() / Rational(-3, 4);
        EXPECT_LE(abs(image - t), dyadic(1, 16)) << t;
    }
    RealStream one = real_of(p, q(1));
    EXPECT_THROW(approximate_supremum(rational_at(1), one, 4), PreconditionViolation);
}
