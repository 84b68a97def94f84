// Acceptance runner: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "ordsemi/cli.hpp"
#include "ordsemi/coproduct.hpp"
#include "ordsemi/exemplars.hpp"
#include "ordsemi/field.hpp"
#include "ordsemi/rank.hpp"
#include "ordsemi/sampling.hpp"
#include "ordsemi/workspace.hpp"

#include "oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace ordsemi;

namespace {

// Collects the first few failure descriptions of one criterion.
class Checker {
public:
    void expect(bool ok, const std::function<std::string()>& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (notes_.size() < 3) notes_.push_back(what());
    }
    void note(std::string s) { info_.push_back(std::move(s)); }

    bool ok() const noexcept { return failures_ == 0; }
    std::size_t checks() const noexcept { return checks_; }

    std::string summary() const {
        std::ostringstream out;
        out << checks_ << " checks";
        for (const auto& s : info_) out << ", " << s;
        if (failures_) {
            out << ", " << failures_ << " failed";
            for (const auto& s : notes_) out << "; " << s;
        }
        return out.str();
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::vector<std::string> notes_;
    std::vector<std::string> info_;
};

int failed = 0;

void criterion(const char* id, const char* title, double limit_seconds, const std::function<void(Checker&)>& body) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, [&] { return std::string("exception: ") + e.what(); });
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = limit_seconds <= 0 || seconds < limit_seconds;
    const bool pass = c.ok() && in_time;
    if (!pass) ++failed;
    std::cout << id << ' ' << (pass ? "PASS" : "FAIL") << "  " << title << "  (" << std::fixed << std::setprecision(2)
              << seconds << " s";
    if (limit_seconds > 0) std::cout << ", limit " << limit_seconds << " s";
    std::cout << "; " << c.summary() << ")" << std::endl;
}

const auto Q = std::make_shared<RationalLinear>();
const PointedBackend unit_q(Q, Q->element(1));

RealStream value(const Rational& r) { return real_of(unit_q, Q->element(r)); }

Rational nonzero_rational(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, std::int64_t den) {
    Rational r;
    do r = oracle::random_rational(rng, lo, hi, den);
    while (r == 0);
    return r;
}

std::string show(const Backend& b, const Element& x) { return format_element(b, x); }

// Exact model of the non-anomalous exemplars: x = u + v * lambda.
struct Model {
    BackendPtr backend;
    std::optional<QuadraticIrrational> lambda;

    std::pair<Rational, Rational> coordinates(const Element& x) const {
        if (std::holds_alternative<Rational>(x.payload())) return {x.rational(), 0};
        return {Rational(x.tuple()[0]), Rational(x.tuple()[1])};
    }

    // Sign of sum c_i * x_i in the model.
    int sign_of(const std::vector<std::pair<Rational, Element>>& terms) const {
        Rational u = 0, v = 0;
        for (const auto& [c, x] : terms) {
            const auto [ux, vx] = coordinates(x);
            u += c * ux;
            v += c * vx;
        }
        if (!lambda) return sgn(u);
        return oracle::quadratic_sign(u, v, lambda->p, lambda->q, lambda->d);
    }

    Integer beta(unsigned n, const Element& x, const Element& a) const {
        if (!lambda) return oracle::beta(n, x.rational(), a.rational());
        const Tuple& t = x.tuple();
        const Tuple& s = a.tuple();
        return oracle::quadratic_beta(n, t[0], t[1], s[0], s[1], lambda->p, lambda->q, lambda->d);
    }
};

Model model_of(const BackendPtr& b) {
    if (const auto* slope = dynamic_cast<const QuadraticSlope*>(b.get())) return {b, slope->lambda()};
    return {b, std::nullopt};
}

BackendPtr quadratic(const QuadraticIrrational& l) { return std::make_shared<QuadraticSlope>(l); }

Element random_nonidentity(const Backend& b, std::mt19937_64& rng) {
    for (;;) {
        Element x = random_element(b, rng);
        if (sign(b, x) != Sign::Identity) return x;
    }
}

// ----------------------------------------------------------------------------

void rank_identities(Checker& c) {
    const std::vector<BackendPtr> backends{Q, quadratic({0, 1, 2}), quadratic({0, 1, 3}),
                                           quadratic({Rational(1, 2), Rational(1, 2), 5}),
                                           std::make_shared<DyadicChain>()};
    std::mt19937_64 rng(101);
    std::size_t separations = 0;
    for (const BackendPtr& b : backends) {
        const Model m = model_of(b);
        for (int sample = 0; sample < 2000; ++sample) {
            const Element a = random_nonidentity(*b, rng);
            const PointedBackend p(b, a);
            const Element x = random_element(*b, rng);
            const Element y = random_element(*b, rng);
            const std::string where = b->name() + " a=" + show(*b, a) + " x=" + show(*b, x);

            RankStream sa(p, a), sx(p, x), sy(p, y), sxy(p, b->compose(x, y));
            for (unsigned n = 0; n <= 24; ++n)
                c.expect(sa.beta(n) == pow2(n), [&] { return "beta_n(a) != 2^n at " + where; });

            for (unsigned n = 0; n <= 16; ++n) {
                for (unsigned k = 0; k <= 8; ++k) {
                    const Integer lhs = pow2(k) * sx.beta(n);
                    const Integer mid = sx.beta(n + k);
                    c.expect(lhs <= mid && mid < pow2(k) + lhs, [&] { return "doubling bounds at " + where; });
                }
                const Integer bx = sx.beta(n), by = sy.beta(n), bxy = sxy.beta(n);
                c.expect(bx + by <= bxy && bxy <= bx + by + 1, [&] { return "subadditivity at " + where; });
            }
            // Exact values from the model for a handful of levels.
            for (unsigned n : {0u, 7u, 19u})
                c.expect(sx.beta(n) == m.beta(n, x, a), [&] { return "beta vs oracle at " + where; });

            const auto order = p.order().compare(p.to_order(x), p.to_order(y));
            if (order == std::strong_ordering::equal) continue;
            RankStream& hi = order == std::strong_ordering::greater ? sx : sy;
            RankStream& lo = order == std::strong_ordering::greater ? sy : sx;
            bool separated = false;
            for (unsigned n = 0; n <= 64 && !separated; ++n) separated = lo.beta(n) + 1 < hi.beta(n);
            c.expect(separated, [&] { return "no separation by level 64 at " + where; });
            ++separations;
        }
    }
    c.note("10000 samples");
    c.note(std::to_string(separations) + " ordered pairs separated");
}

void enclosure_soundness(Checker& c) {
    std::mt19937_64 rng(202);
    for (int i = 0; i < 1000; ++i) {
        const Rational a = nonzero_rational(rng, -50, 50, 20);
        const Rational x = oracle::random_rational(rng, -400, 400, 60);
        const PointedBackend p(Q, Q->element(a));
        const Rational ratio = x / a;
        RankStream s(p, Q->element(x));
        for (unsigned n = 0; n <= 30; ++n) {
            const DyadicEnclosure e = embed(p, Q->element(x), n);
            c.expect(e.contains(ratio) && e.upper() - e.lower() == dyadic(1, n), [&] {
                return "embed(" + x.get_str() + ") at a=" + a.get_str() + ", n=" + std::to_string(n);
            });
            c.expect(e.lo.mantissa == s.beta(n), [&] { return "embed disagrees with beta"; });
        }
    }
    c.note("1000 elements, n = 0..30");
}

void anomalous_pairs(Checker& c) {
    const WorkspaceDocument builtins = WorkspaceDocument::builtins();
    std::mt19937_64 rng(303);
    std::size_t decided = 0, close = 0;
    for (const auto& [name, entry] : builtins.backends) {
        const BackendPtr& b = entry.backend;
        if (!b->flags().non_anomalous) continue;
        const Model m = model_of(b);
        for (int i = 0; i < 1000; ++i) {
            Element x = random_element(*b, rng);
            Element y = random_element(*b, rng);
            const std::string where = name + " " + show(*b, x) + ", " + show(*b, y);
            c.expect(b->compose(x, y) == b->compose(y, x), [&] { return "noncommuting pair in " + where; });

            const Sign sx = sign(*b, x);
            if (sx == Sign::Identity || sign(*b, y) != sx || x == y) continue;
            if (b->compare(x, y) == std::strong_ordering::less) std::swap(x, y);

            // Least n <= 64 with n*x >= (n+1)*y (positive) or (n+1)*x >= n*y
            // (negative), decided in the exact model.
            const auto fails = [&](const Rational& n) {
                return sx == Sign::Positive ? m.sign_of({{n, x}, {-(n + 1), y}}) >= 0
                                            : m.sign_of({{n + 1, x}, {-n, y}}) >= 0;
            };
            unsigned witness = 0;
            for (unsigned n = 1; n <= 64 && witness == 0; ++n)
                if (fails(n)) witness = n;
            const AnomalousVerdict v = is_anomalous_pair_at_depth(*b, x, y, 64);
            if (witness) {
                ++decided;
                c.expect(v == AnomalousVerdict::not_anomalous(witness), [&] { return "scan disagrees at " + where; });
                continue;
            }
            // A pair closer than 1/64 in ratio: the witness exists beyond the
            // scanned depth, and the model confirms it is the least one.
            ++close;
            c.expect(v == AnomalousVerdict::anomalous_up_to(64), [&] { return "spurious witness at " + where; });
            const AnomalousVerdict deep = is_anomalous_pair_at_depth(*b, x, y, 1u << 20);
            c.expect(deep.kind == AnomalousVerdict::Kind::NotAnomalous && deep.n > 64 && fails(deep.n) &&
                         !fails(deep.n - 1),
                     [&] { return "no finite witness for close pair " + where; });
        }
    }
    c.note(std::to_string(decided) + " pairs decided by depth 64");
    c.note(std::to_string(close) + " close pairs with least witness beyond 64");

    const auto lex = std::make_shared<LexZ2>();
    c.expect(is_anomalous_pair_at_depth(*lex, lex->element(1, 1), lex->element(1, 0), 64) ==
                 AnomalousVerdict::anomalous_up_to(64),
             [] { return "lex pair not AnomalousUpTo(64)"; });

    const auto heis = std::make_shared<HeisenbergLex>();
    const auto model = [](const Element& e) {
        const Tuple& t = e.tuple();
        return oracle::H{t[0].get_si(), t[1].get_si(), t[2].get_si()};
    };
    int pairs = 0;
    while (pairs < 200) {
        Element x = random_element(*heis, rng);
        Element y = random_element(*heis, rng);
        const int order = oracle::lex(oracle::heis(model(x), model(y)), oracle::heis(model(y), model(x)));
        if (order == 0) continue;
        if (order < 0) std::swap(x, y);
        ++pairs;
        const oracle::H hx = model(x), hy = model(y);
        for (unsigned n = 1; n <= 8; ++n) {
            const auto a = oracle::heis(oracle::heis_pow(hx, n), oracle::heis_pow(hy, n));
            const auto b = oracle::heis_pow(oracle::heis(hx, hy), n);
            const auto d = oracle::heis_pow(oracle::heis(hy, hx), n);
            const auto e = oracle::heis(oracle::heis_pow(hy, n), oracle::heis_pow(hx, n));
            const bool strict = n >= 2;
            const bool expected = (strict ? oracle::lex(a, b) > 0 : oracle::lex(a, b) >= 0) && oracle::lex(b, d) > 0 &&
                                  (strict ? oracle::lex(d, e) > 0 : oracle::lex(d, e) >= 0);
            c.expect(expected && lemma21_chain_holds(*heis, x, y, n),
                     [&] { return "chain fails for " + show(*heis, x) + ", " + show(*heis, y); });
        }
    }
    c.note("200 noncommuting Heisenberg pairs");
}

Rational exact_value(const FormalSum& x) {
    Rational total = 0;
    for (const auto& [i, e] : x.terms()) total += e.rational() / x.family()->at(i).basepoint().rational();
    return total;
}

Integer oracle_gamma(unsigned n, const FormalSum& x) {
    Integer total = 0;
    for (const auto& [i, e] : x.terms())
        total += oracle::beta(n, e.rational(), x.family()->at(i).basepoint().rational());
    return total;
}

void coproduct(Checker& c) {
    std::mt19937_64 rng(404);
    std::size_t ties = 0;
    for (int i = 0; i < 1000; ++i) {
        auto f = std::make_shared<Family>();
        const int members = static_cast<int>(oracle::uniform(rng, 2, 4));
        for (int k = 1; k <= members; ++k) f->emplace(k, PointedBackend(Q, Q->element(nonzero_rational(rng, -9, 9, 5))));
        const auto random_sum = [&] {
            std::map<std::size_t, Element> terms;
            for (int k = 1; k <= members; ++k)
                if (rng() % 2 == 0) terms.emplace(k, Q->element(oracle::random_rational(rng, -30, 30, 8)));
            if (terms.empty()) terms.emplace(1, Q->element(oracle::random_rational(rng, -30, 30, 8)));
            return FormalSum(f, std::move(terms));
        };
        const FormalSum x = random_sum(), y = random_sum();
        const Rational vx = exact_value(x), vy = exact_value(y);
        const PrecedesVerdict v = precedes(x, y);

        std::optional<PrecedesVerdict> expected;
        for (unsigned n = 0; n <= 64 && !expected; ++n) {
            const Integer gx = oracle_gamma(n, x), gy = oracle_gamma(n, y);
            if (gx + static_cast<unsigned long>(x.support()) + 1 <= gy)
                expected = PrecedesVerdict{PrecedesVerdict::Kind::Precedes, n};
            else if (gy + static_cast<unsigned long>(y.support()) + 1 <= gx)
                expected = PrecedesVerdict{PrecedesVerdict::Kind::Succeeds, n};
        }
        const auto where = [&] { return "sums with values " + vx.get_str() + ", " + vy.get_str(); };
        const PrecedesVerdict::Kind direction = vx < vy   ? PrecedesVerdict::Kind::Precedes
                                                : vx > vy ? PrecedesVerdict::Kind::Succeeds
                                                          : PrecedesVerdict::Kind::IncomparableUpTo;
        c.expect(v.kind == direction, [&] { return "direction mismatch for " + where(); });
        if (direction == PrecedesVerdict::Kind::IncomparableUpTo) {
            ++ties;
            c.expect(v.level == 64 && !expected, [&] { return "tie not incomparable at 64 for " + where(); });
        } else {
            c.expect(expected && v == *expected, [&] { return "witness level not minimal for " + where(); });
        }

        for (const auto& [j, pj] : *f)
            for (const auto& [k, pk] : *f) {
                const PrecedesVerdict b = precedes(FormalSum::single(f, j, pj.basepoint()), FormalSum::single(f, k, pk.basepoint()));
                c.expect(b == PrecedesVerdict{PrecedesVerdict::Kind::IncomparableUpTo, 64},
                         [&] { return "basepoint sums compared"; });
            }
    }
    c.note("1000 sum pairs");
    c.note(std::to_string(ties) + " exact ties");
}

void field(Checker& c) {
    std::mt19937_64 rng(505);
    const Rational width = dyadic(1, 24);
    for (int i = 0; i < 1000; ++i) {
        const Rational x = oracle::random_rational(rng, -300, 300, 40);
        const Rational y = nonzero_rational(rng, -300, 300, 40);
        const Enclosure p = multiply(value(x), value(y)).at(24);
        c.expect(p.contains(x * y) && p.width() <= width, [&] { return "product of " + x.get_str() + ", " + y.get_str(); });
        const Enclosure r = invert(value(y), 24);
        c.expect(r.contains(1 / y) && r.width() <= width, [&] { return "inverse of " + y.get_str(); });
    }

    for (int i = 0; i < 500; ++i) {
        const Rational a = nonzero_rational(rng, -40, 40, 9);
        const Rational image = nonzero_rational(rng, -40, 40, 9);
        const Rational t = nonzero_rational(rng, -9, 9, 4);
        const Rational s = nonzero_rational(rng, -9, 9, 4);
        const PointedBackend target(Q, Q->element(t)), frame(Q, Q->element(s));
        const Morphism m(PointedBackend(Q, Q->element(a)), target, Q->element(image), frame);
        // i(a) = a / s, j(f(a)) = image / t.
        const Rational lambda = (image / t) / (a / s);
        c.expect(lambda * (a / s) == image / t, [] { return "oracle identity"; });
        RealStream l = hion_lambda(m).lambda;
        RealStream fa = apply_morphism(m, Q->element(a));
        const Enclosure el = l.at(24), efa = fa.at(24);
        c.expect(el.contains(lambda) && el.width() <= width && efa.contains(image / t) && efa.width() <= width,
                 [&] { return "hion scalar for a=" + a.get_str() + ", f(a)=" + image.get_str(); });
    }

    std::vector<RealStream> samples;
    for (int i = 0; i < 6; ++i) samples.push_back(value(oracle::random_rational(rng, -50, 50, 12)));
    const FieldLawReport rational_laws = field_law_check(samples, value(1), 24);
    c.expect(rational_laws.ok(), [&] { return "field law violation: " + rational_laws.violations.front().law; });

    const auto root2 = std::make_shared<QuadraticSlope>(QuadraticIrrational{0, 1, 2});
    const PointedBackend r2(root2, root2->element(1, 0));
    std::vector<RealStream> quadratic_samples;
    for (int i = 0; i < 4; ++i) quadratic_samples.push_back(real_of(r2, random_element(*root2, rng)));
    const FieldLawReport quadratic_laws = field_law_check(quadratic_samples, real_of(r2, r2.basepoint()), 24);
    c.expect(quadratic_laws.ok(), [&] { return "field law violation: " + quadratic_laws.violations.front().law; });
    c.note(std::to_string(rational_laws.checks + quadratic_laws.checks) + " field law checks");

    RealStream s = real_of(r2, root2->element(0, 1));
    const Enclosure sq = multiply(s, s).at(24);
    c.expect(sq.contains(2) && sq.width() <= width, [] { return "sqrt(2)^2 does not enclose 2"; });
}

void supremum(Checker& c) {
    std::mt19937_64 rng(606);
    const auto D = std::make_shared<DyadicChain>();
    const Rational tolerance = dyadic(1, 20);
    for (int i = 0; i < 100; ++i) {
        const Rational target = i % 2 == 0 ? Rational(oracle::uniform(rng, -(1 << 26), 1 << 26)) * dyadic(1, oracle::uniform(rng, 0, 30))
                                           : oracle::random_rational(rng, -5000, 5000, 997);
        Rational a;
        do a = Rational(oracle::uniform(rng, -64, 64)) * dyadic(1, oracle::uniform(rng, 0, 6));
        while (a == 0);
        const PointedBackend chain(D, D->element(a));
        RealStream stream = value(target);
        const Element l = approximate_supremum(chain, stream, 20);
        c.expect(abs(l.rational() / a - target) <= tolerance,
                 [&] { return "target " + target.get_str() + " at a=" + a.get_str(); });
    }
    c.note("100 targets");
}

void golden(Checker& c) {
    const std::string dir = GOLDEN_DIR;
    std::ifstream in(dir + "/corpus.json");
    c.expect(static_cast<bool>(in), [&] { return "cannot read " + dir + "/corpus.json"; });
    if (!in) return;
    const auto corpus = nlohmann::json::parse(in);
    std::set<int> exits;
    for (const auto& entry : corpus) {
        std::vector<std::string> args;
        for (const auto& a : entry.at("args")) {
            std::string s = a.get<std::string>();
            if (const auto pos = s.find("@GOLDEN@"); pos != std::string::npos) s.replace(pos, 8, dir);
            args.push_back(s);
        }
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        const int expected = entry.at("exit").get<int>();
        exits.insert(expected);
        const auto where = [&] { return "invocation " + entry.at("args").dump(); };
        c.expect(code == expected && out.str() == entry.at("stdout").get<std::string>(), where);
        c.expect(code == 0 || !err.str().empty(), where);
    }
    c.expect(corpus.size() >= 30, [] { return "corpus smaller than 30"; });
    c.expect(exits == std::set<int>{0, 1, 2, 3, 4}, [] { return "corpus misses an exit code"; });
    c.note(std::to_string(corpus.size()) + " invocations");
}

} // namespace

int main() {
    criterion("AC1", "rank function identities", 30, rank_identities);
    criterion("AC2", "enclosure soundness", 10, enclosure_soundness);
    criterion("AC3", "anomalous pairs and commutativity", 0, anomalous_pairs);
    criterion("AC4", "coproduct order vs exact sums", 0, coproduct);
    criterion("AC5", "field structure", 0, field);
    criterion("AC6", "supremum search", 5, supremum);
    criterion("AC7", "command line golden corpus", 0, golden);
    return failed;
}
