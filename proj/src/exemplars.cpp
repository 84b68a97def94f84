#include "ordsemi/exemplars.hpp"

#include <sstream>

namespace ordsemi {
namespace {

std::strong_ordering lex_compare(const Tuple& x, const Tuple& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        int c = cmp(x[i], y[i]);
        if (c != 0) return to_ordering(c);
    }
    return std::strong_ordering::equal;
}

Tuple add_tuples(const Tuple& x, const Tuple& y) {
    Tuple out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

std::string format_tuple(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += t[i].get_str();
    }
    return s + ")";
}

const Tuple& tuple_atom(const expr::Atom& atom, std::size_t arity, const std::string& backend) {
    const auto* t = std::get_if<expr::TupleLiteral>(&atom);
    if (!t) throw Error(backend + " elements are written as " + std::to_string(arity) + "-tuples");
    if (t->components.size() != arity)
        throw Error(backend + " expects a " + std::to_string(arity) + "-tuple, got " +
                    std::to_string(t->components.size()) + " components");
    return t->components;
}

Rational rational_atom(const expr::Atom& atom, const std::string& backend) {
    const auto* lit = std::get_if<expr::RationalLiteral>(&atom);
    if (!lit) throw Error(backend + " elements are written as rational literals");
    Rational q(lit->numerator, lit->denominator);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

} // namespace

// --- RationalLinear --------------------------------------------------------

Element RationalLinear::element(const Rational& q) const {
    if (variant_ == Variant::Positives && sgn(q) <= 0)
        throw Error("the positive-rationals semigroup contains only q > 0");
    return make(q);
}

std::string RationalLinear::name() const {
    return variant_ == Variant::Group ? "rational" : "rational-positives";
}

BackendFlags RationalLinear::flags() const { return {true, variant_ == Variant::Group, true}; }

std::optional<Element> RationalLinear::identity() const {
    if (variant_ == Variant::Positives) return std::nullopt;
    return make(Rational(0));
}

std::optional<Element> RationalLinear::inverse(const Element& x) const {
    require_owned(x);
    if (variant_ == Variant::Positives) return std::nullopt;
    return make(Rational(-x.rational()));
}

Element RationalLinear::from_atom(const expr::Atom& atom) const { return element(rational_atom(atom, name())); }

std::string RationalLinear::format(const Element& x) const {
    require_owned(x);
    return format_rational(x.rational());
}

Payload RationalLinear::compose_payloads(const Payload& x, const Payload& y) const {
    return Rational(std::get<Rational>(x) + std::get<Rational>(y));
}

std::strong_ordering RationalLinear::compare_payloads(const Payload& x, const Payload& y) const {
    return compare_rationals(std::get<Rational>(x), std::get<Rational>(y));
}

// --- quadratic_sign ---------------------------------------------------------

int quadratic_sign(const Rational& u, const Rational& v, const QuadraticIrrational& lambda) {
    // u + v*(p + q*sqrt(d)) = A + B*sqrt(d)
    const Rational a = u + v * lambda.p;
    const Rational b = v * lambda.q;
    const int sa = sgn(a);
    const int sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare A^2 against B^2*d.
    const Rational a2 = a * a;
    const Rational b2d = b * b * Rational(lambda.d);
    const int c = cmp(a2, b2d); // > 0: |A| dominates
    if (c == 0) return 0;       // unreachable for irrational sqrt(d)
    return c > 0 ? sa : sb;
}

int quadratic_sign(const Integer& m, const Integer& n, const QuadraticIrrational& lambda) {
    return quadratic_sign(Rational(m), Rational(n), lambda);
}

// --- QuadraticSlope ---------------------------------------------------------

QuadraticSlope::QuadraticSlope(QuadraticIrrational lambda) : lambda_(std::move(lambda)) {
    lambda_.p.canonicalize();
    lambda_.q.canonicalize();
    if (lambda_.d < 2) throw DescriptorError("radicand d must be at least 2");
    if (mpz_perfect_square_p(lambda_.d.get_mpz_t()))
        throw DescriptorError("radicand d = " + lambda_.d.get_str() + " is a perfect square");
    if (sgn(lambda_.q) == 0) throw DescriptorError("q must be non-zero for an irrational slope");
    if (quadratic_sign(Rational(0), Rational(1), lambda_) <= 0)
        throw DescriptorError("slope p + q*sqrt(d) must be positive");
}

Element QuadraticSlope::element(const Integer& m, const Integer& n) const {
    if (m < 0 || n < 0 || (m == 0 && n == 0))
        throw Error("quadratic elements need non-negative coefficients, not both zero");
    return make(Tuple{m, n});
}

std::string QuadraticSlope::name() const {
    return "quadratic(" + lambda_.p.get_str() + "+" + lambda_.q.get_str() + "*sqrt(" + lambda_.d.get_str() + "))";
}

Element QuadraticSlope::from_atom(const expr::Atom& atom) const {
    if (const auto* id = std::get_if<expr::Identifier>(&atom)) {
        if (id->name == "a") return element(1, 0);
        if (id->name == "b") return element(0, 1);
        throw Error("unknown generator '" + id->name + "' (expected a or b)");
    }
    if (const auto* lit = std::get_if<expr::RationalLiteral>(&atom)) {
        if (lit->denominator != 1) throw Error("quadratic elements have integer coefficients");
        return element(lit->numerator, 0);
    }
    const Tuple& t = tuple_atom(atom, 2, "quadratic");
    return element(t[0], t[1]);
}

std::string QuadraticSlope::format(const Element& x) const {
    require_owned(x);
    const Tuple& t = x.tuple();
    std::string out;
    auto term = [&](const Integer& c, const char* gen) {
        if (c == 0) return;
        if (!out.empty()) out += " + ";
        if (c != 1) out += c.get_str() + "*";
        out += gen;
    };
    term(t[0], "a");
    term(t[1], "b");
    return out;
}

Payload QuadraticSlope::compose_payloads(const Payload& x, const Payload& y) const {
    return add_tuples(std::get<Tuple>(x), std::get<Tuple>(y));
}

std::strong_ordering QuadraticSlope::compare_payloads(const Payload& x, const Payload& y) const {
    const Tuple& u = std::get<Tuple>(x);
    const Tuple& v = std::get<Tuple>(y);
    return to_ordering(quadratic_sign(Integer(u[0] - v[0]), Integer(u[1] - v[1]), lambda_));
}

// --- DyadicChain -------------------------------------------------------------

Element DyadicChain::element(const Rational& q) const {
    if (!is_dyadic(q)) throw Error("dyadic elements need a power-of-two denominator");
    return make(q);
}

Element DyadicChain::generator(unsigned i) const { return make(dyadic(1, i)); }

Element DyadicChain::halve(const Element& x) const {
    require_owned(x);
    Rational h = x.rational();
    mpq_div_2exp(h.get_mpq_t(), h.get_mpq_t(), 1);
    return make(h);
}

std::optional<Element> DyadicChain::identity() const { return make(Rational(0)); }

std::optional<Element> DyadicChain::inverse(const Element& x) const {
    require_owned(x);
    return make(Rational(-x.rational()));
}

Element DyadicChain::from_atom(const expr::Atom& atom) const {
    if (const auto* id = std::get_if<expr::Identifier>(&atom)) {
        // x<i> names the generator 2^-i.
        const std::string& n = id->name;
        if (n.size() >= 2 && n[0] == 'x' && n.find_first_not_of("0123456789", 1) == std::string::npos &&
            n.size() <= 7)
            return generator(static_cast<unsigned>(std::stoul(n.substr(1))));
        throw Error("unknown generator '" + n + "' (expected x<i>)");
    }
    return element(rational_atom(atom, "dyadic"));
}

std::string DyadicChain::format(const Element& x) const {
    require_owned(x);
    return format_rational(x.rational());
}

Payload DyadicChain::compose_payloads(const Payload& x, const Payload& y) const {
    return Rational(std::get<Rational>(x) + std::get<Rational>(y));
}

std::strong_ordering DyadicChain::compare_payloads(const Payload& x, const Payload& y) const {
    return compare_rationals(std::get<Rational>(x), std::get<Rational>(y));
}

// --- LexZ2 -------------------------------------------------------------------

Element LexZ2::element(const Integer& a, const Integer& b) const { return make(Tuple{a, b}); }

std::optional<Element> LexZ2::identity() const { return element(0, 0); }

std::optional<Element> LexZ2::inverse(const Element& x) const {
    require_owned(x);
    const Tuple& t = x.tuple();
    return element(-t[0], -t[1]);
}

Element LexZ2::from_atom(const expr::Atom& atom) const {
    const Tuple& t = tuple_atom(atom, 2, "lexz2");
    return element(t[0], t[1]);
}

std::string LexZ2::format(const Element& x) const {
    require_owned(x);
    return format_tuple(x.tuple());
}

Payload LexZ2::compose_payloads(const Payload& x, const Payload& y) const {
    return add_tuples(std::get<Tuple>(x), std::get<Tuple>(y));
}

std::strong_ordering LexZ2::compare_payloads(const Payload& x, const Payload& y) const {
    return lex_compare(std::get<Tuple>(x), std::get<Tuple>(y));
}

// --- HeisenbergLex -------------------------------------------------------------

Element HeisenbergLex::element(const Integer& a, const Integer& b, const Integer& c) const {
    return make(Tuple{a, b, c});
}

std::optional<Element> HeisenbergLex::identity() const { return element(0, 0, 0); }

std::optional<Element> HeisenbergLex::inverse(const Element& x) const {
    require_owned(x);
    const Tuple& t = x.tuple();
    return element(-t[0], -t[1], t[0] * t[1] - t[2]);
}

Element HeisenbergLex::from_atom(const expr::Atom& atom) const {
    const Tuple& t = tuple_atom(atom, 3, "heisenberg");
    return element(t[0], t[1], t[2]);
}

std::string HeisenbergLex::format(const Element& x) const {
    require_owned(x);
    return format_tuple(x.tuple());
}

Payload HeisenbergLex::compose_payloads(const Payload& x, const Payload& y) const {
    const Tuple& u = std::get<Tuple>(x);
    const Tuple& v = std::get<Tuple>(y);
    return Tuple{u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[0] * v[1]};
}

std::strong_ordering HeisenbergLex::compare_payloads(const Payload& x, const Payload& y) const {
    return lex_compare(std::get<Tuple>(x), std::get<Tuple>(y));
}

// --- Naturals -------------------------------------------------------------------

Element Naturals::element(const Integer& n) const {
    if (n < 1) throw Error("naturals start at 1");
    return make(Rational(n));
}

Element Naturals::from_atom(const expr::Atom& atom) const {
    const Rational q = rational_atom(atom, "naturals");
    if (q.get_den() != 1) throw Error("naturals are integers");
    return element(q.get_num());
}

std::string Naturals::format(const Element& x) const {
    require_owned(x);
    return format_rational(x.rational());
}

Payload Naturals::compose_payloads(const Payload& x, const Payload& y) const {
    return Rational(std::get<Rational>(x) + std::get<Rational>(y));
}

std::strong_ordering Naturals::compare_payloads(const Payload& x, const Payload& y) const {
    return compare_rationals(std::get<Rational>(x), std::get<Rational>(y));
}

// --- construction and parsing -----------------------------------------------------

BackendPtr make_backend(const BackendDescriptor& descriptor) {
    struct Visitor {
        BackendPtr operator()(const RationalDescriptor& d) const { return std::make_shared<RationalLinear>(d.variant); }
        BackendPtr operator()(const QuadraticDescriptor& d) const {
            return std::make_shared<QuadraticSlope>(QuadraticIrrational{d.p, d.q, d.d});
        }
        BackendPtr operator()(const DyadicDescriptor&) const { return std::make_shared<DyadicChain>(); }
        BackendPtr operator()(const LexZ2Descriptor&) const { return std::make_shared<LexZ2>(); }
        BackendPtr operator()(const HeisenbergDescriptor&) const { return std::make_shared<HeisenbergLex>(); }
        BackendPtr operator()(const NaturalsDescriptor&) const { return std::make_shared<Naturals>(); }
    };
    return std::visit(Visitor{}, descriptor);
}

Element parse_element(const Backend& backend, std::string_view text, expr::Position origin) {
    const expr::LinearExpression e = expr::parse(text, origin);
    std::optional<Element> acc;
    for (const expr::Term& term : e.terms) {
        if (term.coefficient == 0) continue;
        auto fail = [&](const std::string& message) -> ParseError {
            return ParseError(message, term.position.line, term.position.column);
        };
        std::optional<Element> value;
        try {
            value = backend.from_atom(term.atom);
            if (term.coefficient < 0) {
                value = backend.inverse(*value);
                if (!value) throw fail(backend.name() + " has no inverses; negative terms are not allowed");
            }
            value = multiple(backend, abs(term.coefficient), *value);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& err) {
            throw fail(err.what());
        }
        acc = acc ? backend.compose(*acc, *value) : *value;
    }
    if (!acc) {
        acc = backend.identity();
        if (!acc) throw ParseError(backend.name() + " has no identity element", origin.line, origin.column);
    }
    return *acc;
}

std::string format_element(const Backend& backend, const Element& x) { return backend.format(x); }

} // namespace ordsemi
