#pragma once

// Backend-agnostic totally ordered semigroups.
//
// A Backend owns a law of composition and a total order that is invariant
// under composition on both sides. Elements carry the id of the backend
// that produced them, and every operation rejects elements of a foreign
// backend. All backends are immutable after construction, so every
// function in this header is safe to call concurrently.

#include "ordsemi/error.hpp"
#include "ordsemi/expression.hpp"
#include "ordsemi/numeric.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ordsemi {

struct BackendId {
    std::uint64_t value = 0;
    friend bool operator==(BackendId, BackendId) = default;
};

using Tuple = std::vector<Integer>;
using Payload = std::variant<Rational, Tuple>;

class Element {
public:
    Element(BackendId backend, Payload payload)
        : backend_(backend), payload_(std::move(payload)) {}

    BackendId backend() const noexcept { return backend_; }
    const Payload& payload() const noexcept { return payload_; }

    const Rational& rational() const { return std::get<Rational>(payload_); }
    const Tuple& tuple() const { return std::get<Tuple>(payload_); }

    friend bool operator==(const Element& a, const Element& b) {
        return a.backend_ == b.backend_ && a.payload_ == b.payload_;
    }

private:
    BackendId backend_;
    Payload payload_;
};

enum class Sign { Positive, Negative, Identity };

std::string_view to_string(Sign s) noexcept;

struct ComparisonOutcome {
    enum class Kind { Less, Equal, Greater, Indistinguishable };

    Kind kind = Kind::Equal;
    // Indistinguishable: the refinement level that was exhausted.
    // Stream comparisons also record the level at which they separated.
    unsigned level = 0;

    static ComparisonOutcome from(std::strong_ordering o) noexcept;
    ComparisonOutcome reversed() const noexcept;

    friend bool operator==(const ComparisonOutcome&, const ComparisonOutcome&) = default;
};

std::string_view to_string(ComparisonOutcome::Kind k) noexcept;

/// Search limits: dyadic refinement depth and number of doubling steps.
class Budget {
public:
    Budget() = default;
    Budget(unsigned max_level, unsigned max_gallop);

    unsigned max_level() const noexcept { return max_level_; }
    unsigned max_gallop() const noexcept { return max_gallop_; }

private:
    unsigned max_level_ = 64;
    unsigned max_gallop_ = 256;
};

struct AnomalousVerdict {
    enum class Kind { AnomalousUpTo, NotAnomalous };

    Kind kind = Kind::AnomalousUpTo;
    // AnomalousUpTo: the depth scanned. NotAnomalous: least failing n.
    unsigned n = 0;

    static AnomalousVerdict anomalous_up_to(unsigned depth) noexcept { return {Kind::AnomalousUpTo, depth}; }
    static AnomalousVerdict not_anomalous(unsigned witness) noexcept { return {Kind::NotAnomalous, witness}; }

    friend bool operator==(const AnomalousVerdict&, const AnomalousVerdict&) = default;
};

std::string_view to_string(AnomalousVerdict::Kind k) noexcept;

struct BackendFlags {
    bool non_anomalous = false;
    bool has_identity = false;
    bool commutative = false;
};

class Backend {
public:
    Backend();
    virtual ~Backend() = default;

    Backend(const Backend&) = delete;
    Backend& operator=(const Backend&) = delete;

    BackendId id() const noexcept { return id_; }

    /// Short descriptor such as "rational", "quadratic(0+1*sqrt(2))".
    virtual std::string name() const = 0;
    virtual BackendFlags flags() const = 0;

    Element compose(const Element& x, const Element& y) const;
    std::strong_ordering compare(const Element& x, const Element& y) const;

    virtual std::optional<Element> identity() const { return std::nullopt; }
    virtual std::optional<Element> inverse(const Element&) const { return std::nullopt; }

    /// Interprets one expression atom. Throws Error with a message when the
    /// atom does not denote an element of this backend.
    virtual Element from_atom(const expr::Atom& atom) const = 0;

    virtual std::string format(const Element& x) const = 0;

    bool owns(const Element& x) const noexcept { return x.backend() == id_; }
    void require_owned(const Element& x) const;

protected:
    Element make(Payload p) const { return Element(id_, std::move(p)); }

    virtual Payload compose_payloads(const Payload& x, const Payload& y) const = 0;
    virtual std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const = 0;

    friend class DualBackend;

private:
    BackendId id_;
};

using BackendPtr = std::shared_ptr<const Backend>;

/// Same composition with every comparison reversed. Elements are moved
/// between the two views with lift() and lower().
class DualBackend final : public Backend {
public:
    explicit DualBackend(BackendPtr primal);

    std::string name() const override;
    BackendFlags flags() const override { return primal_->flags(); }
    std::optional<Element> identity() const override;
    std::optional<Element> inverse(const Element& x) const override;
    Element from_atom(const expr::Atom& atom) const override;
    std::string format(const Element& x) const override;

    const BackendPtr& primal() const noexcept { return primal_; }
    Element lift(const Element& primal_element) const;
    Element lower(const Element& dual_element) const;

protected:
    Payload compose_payloads(const Payload& x, const Payload& y) const override;
    std::strong_ordering compare_payloads(const Payload& x, const Payload& y) const override;

private:
    BackendPtr primal_;
};

Element compose(const Backend& b, const Element& x, const Element& y);

/// Exact backends never return Indistinguishable; the budget is accepted
/// for interface symmetry with stream comparison.
ComparisonOutcome compare(const Backend& b, const Element& x, const Element& y, const Budget& budget = {});

/// n-fold composition of x by binary doubling. n >= 1.
Element multiple(const Backend& b, const Integer& n, const Element& x);

Sign sign(const Backend& b, const Element& x);

/// Scans n = 1..depth for a failure of n*x < (n+1)*y (positive case) or
/// n*y > (n+1)*x (negative case). Requires x > y, both of one sign.
AnomalousVerdict is_anomalous_pair_at_depth(const Backend& b, const Element& x, const Element& y,
                                            unsigned depth, const Budget& budget = {});

/// The unique n with (n+1)*y > x >= n*y (both positive) or the dual
/// (n+1)*y < x <= n*y (both negative). Requires x >= y in the sign's sense.
/// Galloping over 2^k*y, then binary lifting; throws BudgetExhausted after
/// max_gallop doublings.
Integer archimedean_floor(const Backend& b, const Element& x, const Element& y, const Budget& budget = {});

/// Least n >= 0 with x + n*a positive. Requires a positive.
Integer positivize(const Backend& b, const Element& x, const Element& a, const Budget& budget = {});

/// Least m >= 0 such that accept(x + m*a) holds, assuming the predicate is
/// monotone in m and a is positive. m = 0 tests x itself.
Integer least_shift(const Backend& b, const Element& x, const Element& a,
                    const std::function<bool(const Element&)>& accept, const Budget& budget);

BackendPtr dualize(BackendPtr backend);

/// Checks x^n y^n >= (xy)^n > (yx)^n >= y^n x^n with the outer comparisons
/// strict once n >= 2. Requires xy > yx and n >= 1.
bool lemma21_chain_holds(const Backend& b, const Element& x, const Element& y, unsigned n);

struct AxiomViolation {
    std::string axiom;                 // "trichotomy", "transitivity", "associativity", "translation"
    std::vector<std::size_t> indices;  // offending sample indices
};

struct AxiomReport {
    std::size_t elements = 0;
    std::size_t triples = 0;
    std::vector<AxiomViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Exhaustive check of the four ordered-semigroup axioms over all pairs and
/// triples drawn from the sample.
AxiomReport check_axioms_on_sample(const Backend& b, std::span<const Element> elements);

} // namespace ordsemi
