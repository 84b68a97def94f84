#pragma once

// Concrete ordered semigroups with exact, decidable order.

#include "ordsemi/order_core.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace ordsemi {

/// Rationals under addition with the usual order. The positives variant is
/// the semigroup of strictly positive rationals.
class RationalLinear final : public Backend {
public:
    enum class Variant { Positives, Group };

    explicit RationalLinear(Variant v = Variant::Group) : variant_(v) {}

    Variant variant() const noexcept { return variant_; }
    Element element(const Rational& q) const;

    std::string name() const override;
    BackendFlags flags() const override;
    std::optional<Element> identity() const override;
    std::optional<Element> inverse(const Element& x) const override;
    Element from_atom(const expr::Atom& atom) const override;
    std::string format(const Element& x) const override;

protected:
    Payload compose_payloads(const Payload& x, const Payload& y) const override;
    std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const override;

private:
    Variant variant_;
};

/// Quadratic irrational lambda = p + q*sqrt(d) with rational p, q.
struct QuadraticIrrational {
    Rational p;
    Rational q;
    Integer d;
};

/// Exact sign of m + n*lambda: isolate the radical and square.
/// Returns -1, 0 or +1; zero only for m = n = 0.
int quadratic_sign(const Integer& m, const Integer& n, const QuadraticIrrational& lambda);

/// Rational-coefficient variant used by oracles and enclosure checks:
/// sign of u + v*lambda.
int quadratic_sign(const Rational& u, const Rational& v, const QuadraticIrrational& lambda);

/// Elementary semigroup {m*1 + n*lambda : m, n >= 0, not both zero}.
/// Elements are pairs (m, n); generators are named `a` (= 1) and `b` (= lambda).
class QuadraticSlope final : public Backend {
public:
    /// Throws DescriptorError unless d is square-free, d >= 2, q != 0 and lambda > 0.
    explicit QuadraticSlope(QuadraticIrrational lambda);

    const QuadraticIrrational& lambda() const noexcept { return lambda_; }
    Element element(const Integer& m, const Integer& n) const;

    std::string name() const override;
    BackendFlags flags() const override { return {true, false, true}; }
    Element from_atom(const expr::Atom& atom) const override;
    std::string format(const Element& x) const override;

protected:
    Payload compose_payloads(const Payload& x, const Payload& y) const override;
    std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const override;

private:
    QuadraticIrrational lambda_;
};

/// The dyadic rationals Z[1/2] under addition: the group generated by
/// x_1, x_2, ... with 2*x_{i+1} = x_i.
class DyadicChain final : public Backend {
public:
    Element element(const Rational& q) const;
    Element generator(unsigned i) const; // x_i = 2^-i
    Element halve(const Element& x) const;

    std::string name() const override { return "dyadic"; }
    BackendFlags flags() const override { return {true, true, true}; }
    std::optional<Element> identity() const override;
    std::optional<Element> inverse(const Element& x) const override;
    Element from_atom(const expr::Atom& atom) const override;
    std::string format(const Element& x) const override;

protected:
    Payload compose_payloads(const Payload& x, const Payload& y) const override;
    std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const override;
};

/// Z^2 with componentwise addition and lexicographic order. Non-Archimedean.
class LexZ2 final : public Backend {
public:
    Element element(const Integer& a, const Integer& b) const;

    std::string name() const override { return "lexz2"; }
    BackendFlags flags() const override { return {false, true, true}; }
    std::optional<Element> identity() const override;
    std::optional<Element> inverse(const Element& x) const override;
    Element from_atom(const expr::Atom& atom) const override;
    std::string format(const Element& x) const override;

protected:
    Payload compose_payloads(const Payload& x, const Payload& y) const override;
    std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const override;
};

/// Integer Heisenberg group (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'),
/// lexicographically ordered. Noncommutative and non-Archimedean.
class HeisenbergLex final : public Backend {
public:
    Element element(const Integer& a, const Integer& b, const Integer& c) const;

    std::string name() const override { return "heisenberg"; }
    BackendFlags flags() const override { return {false, true, false}; }
    std::optional<Element> identity() const override;
    std::optional<Element> inverse(const Element& x) const override;
    Element from_atom(const expr::Atom& atom) const override;
    std::string format(const Element& x) const override;

protected:
    Payload compose_payloads(const Payload& x, const Payload& y) const override;
    std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const override;
};

/// Positive integers under addition; pointed by 1 it is the initial object.
class Naturals final : public Backend {
public:
    Element element(const Integer& n) const;

    std::string name() const override { return "naturals"; }
    BackendFlags flags() const override { return {true, false, true}; }
    Element from_atom(const expr::Atom& atom) const override;
    std::string format(const Element& x) const override;

protected:
    Payload compose_payloads(const Payload& x, const Payload& y) const override;
    std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const override;
};

struct RationalDescriptor {
    RationalLinear::Variant variant = RationalLinear::Variant::Group;
};
struct QuadraticDescriptor {
    Rational p;
    Rational q;
    Integer d;
};
struct DyadicDescriptor {};
struct LexZ2Descriptor {};
struct HeisenbergDescriptor {};
struct NaturalsDescriptor {};

using BackendDescriptor = std::variant<RationalDescriptor, QuadraticDescriptor, DyadicDescriptor,
                                       LexZ2Descriptor, HeisenbergDescriptor, NaturalsDescriptor>;

/// Throws DescriptorError for malformed descriptors.
BackendPtr make_backend(const BackendDescriptor& descriptor);

/// Parses an element expression and evaluates it in `backend`: terms are
/// composed left to right, positive coefficients become multiples, negative
/// ones need inverses, zero coefficients are dropped. Throws ParseError.
Element parse_element(const Backend& backend, std::string_view text, expr::Position origin = {});

std::string format_element(const Backend& backend, const Element& x);

} // namespace ordsemi
