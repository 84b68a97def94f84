#include "ordsemi/workspace.hpp"

#include <cctype>
#include <optional>
#include <regex>
#include <set>

namespace ordsemi {
namespace {

using expr::Position;

struct Entry {
    std::string value;
    Position key;
    Position value_position;
};

struct Section {
    std::string kind;
    std::string name;
    Position position;
    std::map<std::string, Entry> entries;

    const Entry* find(const std::string& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
    const Entry& require(const std::string& key) const {
        if (const Entry* e = find(key)) return *e;
        throw ParseError(kind + " '" + name + "' needs a '" + key + "' entry", position.line, position.column);
    }
};

[[noreturn]] void fail(const std::string& message, Position p) { throw ParseError(message, p.line, p.column); }

bool is_name(std::string_view s) {
    static const std::regex pattern("[A-Za-z_][A-Za-z0-9_.+-]*");
    return std::regex_match(s.begin(), s.end(), pattern);
}

std::size_t skip_space(std::string_view s, std::size_t i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return i;
}

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

const std::set<std::string>& keys_for(const std::string& kind) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"backend", {"kind", "p", "q", "d"}},
        {"point", {"backend", "base"}},
        {"family", {"members"}},
    };
    return keys.at(kind);
}

std::vector<Section> read_sections(std::string_view text) {
    std::vector<Section> sections;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = trim_right(text.substr(start, end - start));
        ++line_no;
        start = end + 1;

        const std::size_t i = skip_space(line, 0);
        if (i == line.size() || line[i] == '#') continue;
        const Position at{line_no, i + 1};

        if (line[i] == '[') {
            if (line.back() != ']') fail("section header must end with ']'", {line_no, line.size() + 1});
            const std::string_view inner = line.substr(i + 1, line.size() - i - 2);
            const std::size_t k0 = skip_space(inner, 0);
            std::size_t k1 = k0;
            while (k1 < inner.size() && inner[k1] != ' ' && inner[k1] != '\t') ++k1;
            const std::size_t n0 = skip_space(inner, k1);
            const std::string kind(inner.substr(k0, k1 - k0));
            const std::string name(trim_right(inner.substr(n0)));
            if (kind != "backend" && kind != "point" && kind != "family")
                fail("unknown section kind '" + kind + "' (expected backend, point or family)",
                     {line_no, i + 2 + k0});
            if (!is_name(name)) fail("invalid or missing section name", {line_no, i + 2 + n0});
            sections.push_back(Section{kind, name, at, {}});
            continue;
        }

        if (sections.empty()) fail("entry outside of any section", at);
        const std::size_t eq = line.find('=', i);
        if (eq == std::string_view::npos) fail("expected 'key = value'", at);
        const std::string key(trim_right(line.substr(i, eq - i)));
        Section& s = sections.back();
        if (!keys_for(s.kind).count(key)) fail("unknown key '" + key + "' in " + s.kind + " section", at);
        if (s.entries.count(key)) fail("duplicate key '" + key + "'", at);
        const std::size_t v = skip_space(line, eq + 1);
        if (v == line.size()) fail("missing value for '" + key + "'", {line_no, v + 1});
        s.entries.emplace(key, Entry{std::string(line.substr(v)), at, {line_no, v + 1}});
    }
    return sections;
}

Rational read_rational(const Entry& e) {
    static const std::regex pattern("[+-]?[0-9]+(/[0-9]+)?");
    if (!std::regex_match(e.value, pattern)) fail("expected a rational such as 3 or -1/2", e.value_position);
    std::string digits = e.value[0] == '+' ? e.value.substr(1) : e.value;
    const auto slash = digits.find('/');
    const Integer num(digits.substr(0, slash), 10);
    const Integer den = slash == std::string::npos ? Integer(1) : Integer(digits.substr(slash + 1), 10);
    if (den == 0) fail("zero denominator", e.value_position);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer read_integer(const Entry& e) {
    static const std::regex pattern("[+-]?[0-9]+");
    if (!std::regex_match(e.value, pattern)) fail("expected an integer", e.value_position);
    return Integer(e.value[0] == '+' ? e.value.substr(1) : e.value, 10);
}

BackendDescriptor read_descriptor(const Section& s) {
    const Entry& kind = s.require("kind");
    const bool quadratic = kind.value == "quadratic";
    for (const char* key : {"p", "q", "d"})
        if (!quadratic && s.find(key))
            fail(std::string("key '") + key + "' only applies to quadratic backends", s.find(key)->key);

    if (kind.value == "rational") return RationalDescriptor{RationalLinear::Variant::Group};
    if (kind.value == "rational-positives") return RationalDescriptor{RationalLinear::Variant::Positives};
    if (kind.value == "dyadic") return DyadicDescriptor{};
    if (kind.value == "lexz2") return LexZ2Descriptor{};
    if (kind.value == "heisenberg") return HeisenbergDescriptor{};
    if (kind.value == "naturals") return NaturalsDescriptor{};
    if (quadratic) {
        QuadraticDescriptor d;
        d.p = s.find("p") ? read_rational(*s.find("p")) : Rational(0);
        d.q = s.find("q") ? read_rational(*s.find("q")) : Rational(1);
        d.d = read_integer(s.require("d"));
        return d;
    }
    fail("unknown backend kind '" + kind.value + "'", kind.value_position);
}

} // namespace

WorkspaceDocument WorkspaceDocument::builtins() {
    WorkspaceDocument doc;
    auto add = [&](const std::string& name, const BackendDescriptor& d) {
        doc.backends.emplace(name, NamedBackend{make_backend(d), {0, 0}, true});
    };
    add("rational", RationalDescriptor{RationalLinear::Variant::Group});
    add("rational-positives", RationalDescriptor{RationalLinear::Variant::Positives});
    add("dyadic", DyadicDescriptor{});
    add("lexz2", LexZ2Descriptor{});
    add("heisenberg", HeisenbergDescriptor{});
    add("naturals", NaturalsDescriptor{});
    add("sqrt2", QuadraticDescriptor{0, 1, 2});
    add("sqrt3", QuadraticDescriptor{0, 1, 3});
    add("golden", QuadraticDescriptor{Rational(1, 2), Rational(1, 2), 5});
    return doc;
}

WorkspaceDocument parse_workspace(std::string_view text) {
    const std::vector<Section> sections = read_sections(text);

    std::set<std::string> seen;
    for (const Section& s : sections)
        if (!seen.insert(s.name).second) fail("duplicate name '" + s.name + "'", s.position);

    WorkspaceDocument doc = WorkspaceDocument::builtins();

    for (const Section& s : sections) {
        if (s.kind != "backend") continue;
        const BackendDescriptor descriptor = read_descriptor(s);
        try {
            doc.backends.insert_or_assign(s.name, NamedBackend{make_backend(descriptor), s.position, false});
        } catch (const DescriptorError& e) {
            fail(std::string("descriptor error: ") + e.what(), s.position);
        }
    }

    for (const Section& s : sections) {
        if (s.kind != "point") continue;
        const Entry& backend = s.require("backend");
        const Entry& base = s.require("base");
        auto it = doc.backends.find(backend.value);
        if (it == doc.backends.end()) fail("unknown backend '" + backend.value + "'", backend.value_position);
        const Element element = parse_element(*it->second.backend, base.value, base.value_position);
        try {
            doc.points.emplace(s.name, NamedPoint{backend.value, PointedBackend(it->second.backend, element),
                                                  s.position});
        } catch (const PreconditionViolation& e) {
            fail(e.what(), base.value_position);
        }
    }

    for (const Section& s : sections) {
        if (s.kind != "family") continue;
        const Entry& members = s.require("members");
        NamedFamily family{{}, nullptr, s.position};
        auto built = std::make_shared<Family>();
        std::size_t from = 0;
        while (from <= members.value.size()) {
            std::size_t comma = members.value.find(',', from);
            if (comma == std::string::npos) comma = members.value.size();
            const std::string_view raw = std::string_view(members.value).substr(from, comma - from);
            const std::size_t lead = skip_space(raw, 0);
            const std::string name(trim_right(raw.substr(lead)));
            const Position at{members.value_position.line, members.value_position.column + from + lead};
            if (name.empty()) fail("empty family member", at);
            auto point = doc.points.find(name);
            if (point == doc.points.end()) fail("unknown point '" + name + "'", at);
            family.members.push_back(name);
            built->emplace(family.members.size(), point->second.point);
            from = comma + 1;
        }
        family.family = std::move(built);
        doc.families.emplace(s.name, std::move(family));
    }
    return doc;
}

} // namespace ordsemi
