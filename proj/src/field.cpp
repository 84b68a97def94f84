#include "ordsemi/field.hpp"

#include <algorithm>
#include <optional>

namespace ordsemi {
namespace {

unsigned magnitude_of(RealStream& x) {
    const Enclosure e = x.at(0);
    const Rational bound = std::max(abs(e.lower()), abs(e.upper())) + 1;
    return static_cast<unsigned>(magnitude_bits(bound));
}

class ProductSource final : public StreamSource {
public:
    ProductSource(RealStream x, RealStream y) : x_(std::move(x)), y_(std::move(y)) {}

    Enclosure at(unsigned level) override {
        if (!extra_) {
            const unsigned bx = magnitude_of(x_);
            const unsigned by = magnitude_of(y_);
            const unsigned cx = x_.width_bits();
            const unsigned cy = y_.width_bits();
            extra_ = std::max({bx + cy, by + cx, cx + cy}) + 3;
        }
        const unsigned m = level + *extra_;
        const Enclosure a = x_.at(m);
        const Enclosure b = y_.at(m);
        const auto [lo, hi] = interval_product(a.lower(), a.upper(), b.lower(), b.upper());
        return Enclosure::outward(lo, hi, level + 2);
    }
    unsigned width_bits() const override { return 0; }
    std::unique_ptr<StreamSource> clone() const override { return std::make_unique<ProductSource>(*this); }

private:
    RealStream x_;
    RealStream y_;
    std::optional<unsigned> extra_;
};

class AddSource final : public StreamSource {
public:
    AddSource(RealStream x, RealStream y) : x_(std::move(x)), y_(std::move(y)) {}

    Enclosure at(unsigned level) override {
        const unsigned m = level + 2 + std::max(x_.width_bits(), y_.width_bits());
        const Enclosure a = x_.at(m);
        const Enclosure b = y_.at(m);
        return Enclosure::outward(a.lower() + b.lower(), a.upper() + b.upper(), level + 2);
    }
    unsigned width_bits() const override { return 0; }
    std::unique_ptr<StreamSource> clone() const override { return std::make_unique<AddSource>(*this); }

private:
    RealStream x_;
    RealStream y_;
};

class NegateSource final : public StreamSource {
public:
    explicit NegateSource(RealStream x) : x_(std::move(x)) {}

    Enclosure at(unsigned level) override {
        Enclosure e = x_.at(level);
        return Enclosure{-e.hi, -e.lo, e.level};
    }
    unsigned width_bits() const override { return x_.width_bits(); }
    std::unique_ptr<StreamSource> clone() const override { return std::make_unique<NegateSource>(*this); }

private:
    RealStream x_;
};

class ReciprocalSource final : public StreamSource {
public:
    ReciprocalSource(RealStream x, const Budget& budget) : x_(std::move(x)), budget_(budget) {}

    Enclosure at(unsigned level) override {
        separate();
        const unsigned m = std::max(separation_level_, level + 1 + x_.width_bits() + 2 * inverse_bits_);
        const Enclosure e = x_.at(m);
        const Rational lo = 1 / e.upper();
        const Rational hi = 1 / e.lower();
        return Enclosure::outward(lo, hi, level + 2);
    }
    unsigned width_bits() const override { return 0; }
    std::unique_ptr<StreamSource> clone() const override { return std::make_unique<ReciprocalSource>(*this); }

private:
    void separate() {
        if (separated_) return;
        for (unsigned level = 0; level <= budget_.max_level(); ++level) {
            const Enclosure e = x_.at(level);
            if (e.positive() || e.negative()) {
                const Rational gap = std::min(abs(e.lower()), abs(e.upper()));
                separation_level_ = level;
                inverse_bits_ = static_cast<unsigned>(magnitude_bits(Rational(1 / gap)));
                separated_ = true;
                return;
            }
        }
        throw ZeroDivision("no enclosure up to level " + std::to_string(budget_.max_level()) +
                           " separates the divisor from zero");
    }

    RealStream x_;
    Budget budget_;
    bool separated_ = false;
    unsigned separation_level_ = 0;
    unsigned inverse_bits_ = 0;
};

} // namespace

std::pair<Rational, Rational> interval_product(const Rational& a_lo, const Rational& a_hi, const Rational& b_lo,
                                               const Rational& b_hi) {
    enum class Kind { Positive, Negative, Mixed };
    auto kind = [](const Rational& lo, const Rational& hi) {
        if (sgn(lo) >= 0) return Kind::Positive;
        if (sgn(hi) <= 0) return Kind::Negative;
        return Kind::Mixed;
    };
    const Kind ka = kind(a_lo, a_hi);
    const Kind kb = kind(b_lo, b_hi);
    using P = std::pair<Rational, Rational>;
    switch (ka) {
    case Kind::Positive:
        switch (kb) {
        case Kind::Positive: return P{a_lo * b_lo, a_hi * b_hi};
        case Kind::Negative: return P{a_hi * b_lo, a_lo * b_hi};
        case Kind::Mixed: return P{a_hi * b_lo, a_hi * b_hi};
        }
        break;
    case Kind::Negative:
        switch (kb) {
        case Kind::Positive: return P{a_lo * b_hi, a_hi * b_lo};
        case Kind::Negative: return P{a_hi * b_hi, a_lo * b_lo};
        case Kind::Mixed: return P{a_lo * b_hi, a_lo * b_lo};
        }
        break;
    case Kind::Mixed:
        switch (kb) {
        case Kind::Positive: return P{a_lo * b_hi, a_hi * b_hi};
        case Kind::Negative: return P{a_hi * b_lo, a_lo * b_lo};
        case Kind::Mixed: {
            Rational lo = std::min(Rational(a_lo * b_hi), Rational(a_hi * b_lo));
            Rational hi = std::max(Rational(a_lo * b_lo), Rational(a_hi * b_hi));
            return P{std::move(lo), std::move(hi)};
        }
        }
        break;
    }
    return P{0, 0};
}

RealStream add(RealStream x, RealStream y) {
    return RealStream(std::make_unique<AddSource>(std::move(x), std::move(y)));
}

RealStream negate(RealStream x) { return RealStream(std::make_unique<NegateSource>(std::move(x))); }

RealStream multiply(RealStream x, RealStream y) {
    return RealStream(std::make_unique<ProductSource>(std::move(x), std::move(y)));
}

RealStream reciprocal(RealStream x, const Budget& budget) {
    return RealStream(std::make_unique<ReciprocalSource>(std::move(x), budget));
}

Enclosure invert(RealStream x, unsigned n, const Budget& budget) { return reciprocal(std::move(x), budget).at(n); }

// ---------------------------------------------------------------------------

Morphism::Morphism(PointedBackend source_, PointedBackend target_, Element image)
    : Morphism(source_, std::move(target_), std::move(image), source_) {}

Morphism::Morphism(PointedBackend source_, PointedBackend target_, Element image, PointedBackend frame)
    : source(std::move(source_)),
      target(std::move(target_)),
      basepoint_image(std::move(image)),
      source_frame(std::move(frame)) {
    target.backend()->require_owned(basepoint_image);
    if (source_frame.backend()->id() != source.backend()->id())
        throw BackendMismatch("source frame must point the source backend");
    if (sign(*target.backend(), basepoint_image) == Sign::Identity)
        throw PreconditionViolation("a morphism cannot send the basepoint to an identity");
}

HionScalar hion_lambda(const Morphism& m, const Budget& budget) {
    RealStream image = real_of(m.target, m.basepoint_image, budget);
    RealStream base = real_of(m.source_frame, m.source.basepoint(), budget);
    return HionScalar{multiply(std::move(image), reciprocal(std::move(base), budget))};
}

RealStream apply_morphism(const Morphism& m, const Element& x, const Budget& budget) {
    m.source.backend()->require_owned(x);
    return multiply(hion_lambda(m, budget).lambda, real_of(m.source_frame, x, budget));
}

// ---------------------------------------------------------------------------

FieldLawReport field_law_check(const std::vector<RealStream>& samples, const RealStream& unit, unsigned n,
                               const Budget& budget) {
    FieldLawReport report;
    report.samples = samples.size();
    const std::size_t k = samples.size();
    auto violation = [&](const char* law, std::vector<std::size_t> idx) {
        report.violations.push_back({law, std::move(idx)});
    };

    std::vector<RealStream> s = samples;
    std::vector<Enclosure> level_n;
    for (RealStream& x : s) level_n.push_back(x.at(n));

    std::vector<std::vector<RealStream>> products(k);
    std::vector<std::vector<Enclosure>> product_n(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            products[i].push_back(multiply(s[i], s[j]));
            product_n[i].push_back(products[i].back().at(n));
        }
    }

    for (std::size_t i = 0; i < k; ++i) {
        ++report.checks;
        Enclosure right = multiply(s[i], unit).at(n);
        Enclosure left = multiply(unit, s[i]).at(n);
        if (!right.overlaps(level_n[i]) || !left.overlaps(level_n[i])) violation("unit", {i});

        for (std::size_t j = 0; j < k; ++j) {
            ++report.checks;
            if (!product_n[i][j].overlaps(product_n[j][i])) violation("commutativity", {i, j});

            if (level_n[i].positive() && level_n[j].positive()) {
                ++report.checks;
                RealStream p = products[i][j];
                bool separated = false;
                for (unsigned level = n; level <= n + budget.max_level(); ++level) {
                    const Enclosure e = p.at(level);
                    if (e.negative()) break;
                    if (e.positive()) {
                        separated = true;
                        break;
                    }
                }
                if (!separated) violation("positivity", {i, j});
            }
        }
    }

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            RealStream sum_ij = add(s[i], s[j]);
            for (std::size_t l = 0; l < k; ++l) {
                ++report.triples;
                report.checks += 2;
                const Enclosure assoc_left = multiply(products[i][j], s[l]).at(n);
                const Enclosure assoc_right = multiply(s[i], products[j][l]).at(n);
                if (!assoc_left.overlaps(assoc_right)) violation("associativity", {i, j, l});

                const Enclosure dist_left = multiply(sum_ij, s[l]).at(n);
                const Enclosure dist_right = add(products[i][l], products[j][l]).at(n);
                if (!dist_left.overlaps(dist_right)) violation("distributivity", {i, j, l});
            }
        }
    return report;
}

} // namespace ordsemi
