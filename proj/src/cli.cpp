#include "ordsemi/cli.hpp"

#include "ordsemi/coproduct.hpp"
#include "ordsemi/field.hpp"
#include "ordsemi/sampling.hpp"
#include "ordsemi/workspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

namespace ordsemi::cli {
namespace {

using Record = nlohmann::ordered_json;

/// Unknown names and unreadable files on the command line.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(trim(part));
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

class Session {
public:
    WorkspaceDocument doc = WorkspaceDocument::builtins();
    Budget budget;
    std::uint64_t seed = 0;

    const NamedBackend& backend(const std::string& name) const {
        auto it = doc.backends.find(name);
        if (it == doc.backends.end()) throw UsageError("unknown backend '" + name + "'");
        return it->second;
    }

    Element element(const Backend& b, const std::string& text) const { return parse_element(b, text); }

    /// `backend@expr`, a workspace point name, or a backend name with --base.
    PointedBackend point(const std::string& ref, const std::optional<std::string>& base = std::nullopt) const {
        if (base) {
            const BackendPtr& b = backend(ref).backend;
            return PointedBackend(b, element(*b, *base));
        }
        if (const auto at = ref.find('@'); at != std::string::npos) {
            const BackendPtr& b = backend(trim(ref.substr(0, at))).backend;
            return PointedBackend(b, element(*b, ref.substr(at + 1)));
        }
        auto it = doc.points.find(ref);
        if (it == doc.points.end()) throw UsageError("unknown point '" + ref + "'");
        return it->second.point;
    }

    /// A workspace family, or members separated by ';'.
    FamilyPtr family(const std::string& ref) const {
        if (auto it = doc.families.find(ref); it != doc.families.end()) return it->second.family;
        auto built = std::make_shared<Family>();
        for (const std::string& member : split(ref, ';')) {
            if (member.empty()) throw UsageError("empty family member in '" + ref + "'");
            built->emplace(built->size() + 1, point(member));
        }
        return built;
    }

    /// "i: expr; j: expr" with 1-based member indices.
    FormalSum sum(const FamilyPtr& family, const std::string& text) const {
        std::map<std::size_t, Element> terms;
        for (const std::string& part : split(text, ';')) {
            const auto colon = part.find(':');
            if (colon == std::string::npos) throw UsageError("sum terms are written 'index: expression'");
            const std::string index_text = trim(part.substr(0, colon));
            if (index_text.empty() || !std::all_of(index_text.begin(), index_text.end(), ::isdigit))
                throw UsageError("bad member index '" + index_text + "'");
            const std::size_t index = std::stoul(index_text);
            auto member = family->find(index);
            if (member == family->end()) throw UsageError("family has no member " + index_text);
            if (terms.count(index)) throw UsageError("member " + index_text + " appears twice");
            terms.emplace(index, element(*member->second.backend(), part.substr(colon + 1)));
        }
        return FormalSum(family, std::move(terms));
    }

    std::vector<Element> elements(const Backend& b, const std::vector<std::string>& texts, std::size_t samples) const {
        std::vector<Element> out;
        if (!texts.empty()) {
            for (const std::string& t : texts) out.push_back(element(b, t));
            return out;
        }
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < samples; ++i) out.push_back(random_element(b, rng));
        return out;
    }
};

Record enclosure_record(const Enclosure& e) {
    return Record{{"lo", to_decimal(e.lo)}, {"hi", to_decimal(e.hi)}, {"level", e.level}};
}

void write_text(std::ostream& out, const Record& r) {
    for (const auto& [key, value] : r.items()) {
        out << key << ": ";
        if (value.is_string())
            out << value.get<std::string>();
        else
            out << value.dump();
        out << '\n';
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Exact computations in totally ordered semigroups", "ordsemi");
    app.require_subcommand(1);
    app.fallthrough();

    std::string workspace_path;
    unsigned budget_level = 64;
    unsigned budget_gallop = 256;
    std::uint64_t seed = 0;
    std::string format = "structured";
    app.add_option("--workspace", workspace_path, "Workspace document");
    app.add_option("--budget-level", budget_level, "Refinement depth limit")->check(CLI::PositiveNumber);
    app.add_option("--budget-gallop", budget_gallop, "Doubling step limit")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for sampled checks");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

    std::string a0, a1, a2, a3;
    std::optional<std::string> base;
    std::optional<std::string> frame;
    std::vector<std::string> rest;
    unsigned level = 0;
    unsigned depth = 64;
    std::size_t samples = 6;
    std::function<Record(Session&)> action;

    auto positional = [](CLI::App* sub, const char* name, std::string& target, const char* help) {
        sub->add_option(name, target, help)->required();
    };

    {
        auto* sub = app.add_subcommand("validate", "Check the ordered-semigroup axioms on a sample");
        positional(sub, "backend", a0, "Backend name");
        sub->add_option("elements", rest, "Elements (random sample when omitted)");
        sub->add_option("--samples", samples, "Sample size")->check(CLI::PositiveNumber);
        sub->callback([&] {
            action = [&](Session& s) {
                const NamedBackend& b = s.backend(a0);
                const std::vector<Element> xs = s.elements(*b.backend, rest, samples);
                const AxiomReport report = check_axioms_on_sample(*b.backend, xs);
                Record violations = Record::array();
                for (const AxiomViolation& v : report.violations)
                    violations.push_back(Record{{"axiom", v.axiom}, {"indices", v.indices}});
                return Record{{"backend", a0},
                              {"elements", report.elements},
                              {"triples", report.triples},
                              {"violations", violations},
                              {"ok", report.ok()}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("cmp", "Compare two elements");
        positional(sub, "backend", a0, "Backend name");
        positional(sub, "x", a1, "Element");
        positional(sub, "y", a2, "Element");
        sub->callback([&] {
            action = [&](Session& s) {
                const Backend& b = *s.backend(a0).backend;
                const ComparisonOutcome o = compare(b, s.element(b, a1), s.element(b, a2), s.budget);
                return Record{{"outcome", std::string(to_string(o.kind))}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("sign", "Classify an element as positive, negative or identity");
        positional(sub, "backend", a0, "Backend name");
        positional(sub, "x", a1, "Element");
        sub->callback([&] {
            action = [&](Session& s) {
                const Backend& b = *s.backend(a0).backend;
                return Record{{"sign", std::string(to_string(sign(b, s.element(b, a1))))}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("embed", "Dyadic approximant beta_n(x) / 2^n");
        positional(sub, "point", a0, "Point reference, or backend name with --base");
        positional(sub, "x", a1, "Element");
        sub->add_option("--base", base, "Basepoint expression");
        sub->add_option("--level", level, "Level n")->required();
        sub->callback([&] {
            action = [&](Session& s) {
                const PointedBackend p = s.point(a0, base);
                const DyadicEnclosure e = embed(p, s.element(*p.backend(), a1), level, s.budget);
                return Record{{"mantissa", to_decimal(e.lo.mantissa)}, {"level", e.lo.level}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("anomalous", "Scan a pair for the anomalous inequalities");
        positional(sub, "backend", a0, "Backend name");
        positional(sub, "x", a1, "Larger element");
        positional(sub, "y", a2, "Smaller element");
        sub->add_option("--depth", depth, "Scan depth")->check(CLI::PositiveNumber);
        sub->callback([&] {
            action = [&](Session& s) {
                const Backend& b = *s.backend(a0).backend;
                const AnomalousVerdict v =
                    is_anomalous_pair_at_depth(b, s.element(b, a1), s.element(b, a2), depth, s.budget);
                Record r{{"verdict", std::string(to_string(v.kind))}};
                r[v.kind == AnomalousVerdict::Kind::AnomalousUpTo ? "depth" : "witness"] = v.n;
                return r;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("floor", "Archimedean floor of x by y");
        positional(sub, "backend", a0, "Backend name");
        positional(sub, "x", a1, "Element");
        positional(sub, "y", a2, "Element");
        sub->callback([&] {
            action = [&](Session& s) {
                const Backend& b = *s.backend(a0).backend;
                return Record{{"floor", to_decimal(archimedean_floor(b, s.element(b, a1), s.element(b, a2), s.budget))}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("positivize", "Least n with x + n*a positive");
        positional(sub, "backend", a0, "Backend name");
        positional(sub, "x", a1, "Element");
        positional(sub, "a", a2, "Positive element");
        sub->callback([&] {
            action = [&](Session& s) {
                const Backend& b = *s.backend(a0).backend;
                return Record{{"shift", to_decimal(positivize(b, s.element(b, a1), s.element(b, a2), s.budget))}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("coprod-cmp", "Compare two formal sums over a family");
        positional(sub, "family", a0, "Family name, or point references separated by ';'");
        positional(sub, "x", a1, "Sum such as '1: 1/3; 2: 1/2'");
        positional(sub, "y", a2, "Sum");
        sub->callback([&] {
            action = [&](Session& s) {
                const FamilyPtr f = s.family(a0);
                const PrecedesVerdict v = precedes(s.sum(f, a1), s.sum(f, a2), s.budget);
                return Record{{"verdict", std::string(to_string(v.kind))}, {"level", v.level}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("lambda", "Scalar of the morphism sending the source basepoint to an image");
        positional(sub, "source", a0, "Source point reference");
        positional(sub, "target", a1, "Target point reference");
        positional(sub, "image", a2, "Image of the source basepoint");
        sub->add_option("--frame", frame, "Point of the source backend used to embed it");
        sub->add_option("--level", level, "Level n")->required();
        sub->callback([&] {
            action = [&](Session& s) {
                const PointedBackend source = s.point(a0);
                const PointedBackend target = s.point(a1);
                const Element image = s.element(*target.backend(), a2);
                const Morphism m = frame ? Morphism(source, target, image, s.point(*frame))
                                         : Morphism(source, target, image);
                return enclosure_record(hion_lambda(m, s.budget).lambda.at(level));
            };
        });
    }
    {
        auto* sub = app.add_subcommand("mul", "Enclosure of the product of two embedded elements");
        positional(sub, "point", a0, "Point reference, or backend name with --base");
        positional(sub, "x", a1, "Element");
        positional(sub, "y", a2, "Element");
        sub->add_option("--base", base, "Basepoint expression");
        sub->add_option("--level", level, "Level n")->required();
        sub->callback([&] {
            action = [&](Session& s) {
                const PointedBackend p = s.point(a0, base);
                RealStream product = multiply(real_of(p, s.element(*p.backend(), a1), s.budget),
                                              real_of(p, s.element(*p.backend(), a2), s.budget));
                return enclosure_record(product.at(level));
            };
        });
    }
    {
        auto* sub = app.add_subcommand("inv", "Enclosure of the reciprocal of an embedded element");
        positional(sub, "point", a0, "Point reference, or backend name with --base");
        positional(sub, "x", a1, "Element");
        sub->add_option("--base", base, "Basepoint expression");
        sub->add_option("--level", level, "Level n")->required();
        sub->callback([&] {
            action = [&](Session& s) {
                const PointedBackend p = s.point(a0, base);
                return enclosure_record(invert(real_of(p, s.element(*p.backend(), a1), s.budget), level, s.budget));
            };
        });
    }
    {
        auto* sub = app.add_subcommand("sup", "Dyadic-chain element within 2^-n of an embedded target");
        positional(sub, "chain", a0, "Dyadic point reference, or backend name with --base");
        positional(sub, "target", a1, "Point reference of the target");
        positional(sub, "x", a2, "Target element");
        sub->add_option("--base", base, "Basepoint expression for the chain");
        sub->add_option("--level", level, "Level n")->required();
        sub->callback([&] {
            action = [&](Session& s) {
                const PointedBackend chain = s.point(a0, base);
                const PointedBackend target = s.point(a1);
                RealStream t = real_of(target, s.element(*target.backend(), a2), s.budget);
                const Element l = approximate_supremum(chain, t, level, s.budget);
                return Record{{"element", format_element(*chain.backend(), l)}};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("laws", "Check the field laws on embedded samples");
        positional(sub, "point", a0, "Point reference, or backend name with --base");
        sub->add_option("elements", rest, "Elements (random sample when omitted)");
        sub->add_option("--base", base, "Basepoint expression");
        sub->add_option("--level", level, "Level n")->required();
        sub->add_option("--samples", samples, "Sample size")->check(CLI::PositiveNumber);
        sub->callback([&] {
            action = [&](Session& s) {
                const PointedBackend p = s.point(a0, base);
                std::vector<RealStream> streams;
                for (const Element& x : s.elements(*p.backend(), rest, samples))
                    streams.push_back(real_of(p, x, s.budget));
                const FieldLawReport report =
                    field_law_check(streams, real_of(p, p.basepoint(), s.budget), level, s.budget);
                Record violations = Record::array();
                for (const FieldLawViolation& v : report.violations)
                    violations.push_back(Record{{"law", v.law}, {"indices", v.indices}});
                return Record{{"samples", report.samples},
                              {"triples", report.triples},
                              {"checks", report.checks},
                              {"violations", violations},
                              {"ok", report.ok()}};
            };
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return static_cast<int>(Exit::Success);
        }
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Usage);
    }

    try {
        Session session;
        session.budget = Budget(budget_level, budget_gallop);
        session.seed = seed;
        if (!workspace_path.empty()) {
            std::ifstream in(workspace_path, std::ios::binary);
            if (!in) throw UsageError("cannot read workspace '" + workspace_path + "'");
            std::stringstream text;
            text << in.rdbuf();
            try {
                session.doc = parse_workspace(text.str());
            } catch (const ParseError& e) {
                err << "error: " << workspace_path << ':' << e.what() << '\n';
                return static_cast<int>(Exit::Parse);
            }
        }
        const Record record = action(session);
        if (format == "text")
            write_text(out, record);
        else
            out << record.dump() << '\n';
        return static_cast<int>(Exit::Success);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Usage);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Parse);
    } catch (const DescriptorError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Parse);
    } catch (const BudgetExhausted& e) {
        err << "error: budget exhausted: " << e.what() << '\n';
        return static_cast<int>(Exit::Budget);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Precondition);
    }
}

} // namespace ordsemi::cli
