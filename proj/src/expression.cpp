#include "ordsemi/expression.hpp"

#include "ordsemi/error.hpp"

#include <cctype>

namespace ordsemi::expr {
namespace {

class Parser {
public:
    Parser(std::string_view text, Position origin) : text_(text), line_(origin.line), column_(origin.column) {}

    LinearExpression run() {
        LinearExpression out;
        skip_space();
        if (at_end()) fail("empty expression");

        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1 : 1;
            advance();
            skip_space();
        }
        out.terms.push_back(term(sign));
        skip_space();
        while (!at_end()) {
            char c = peek();
            if (c != '+' && c != '-') fail(std::string("expected '+' or '-', found '") + c + "'");
            advance();
            skip_space();
            out.terms.push_back(term(c == '-' ? -1 : 1));
            skip_space();
        }
        return out;
    }

private:
    Term term(int sign) {
        Position start = here();
        if (at_end()) fail("expected a term");
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer n = integer();
            skip_space();
            if (!at_end() && peek() == '*') {
                advance();
                skip_space();
                Atom a = atom();
                return Term{n * sign, std::move(a), start};
            }
            RationalLiteral lit{n, 1, false};
            if (!at_end() && peek() == '/') {
                advance();
                skip_space();
                Position den_at = here();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
                lit.denominator = integer();
                lit.has_slash = true;
                if (lit.denominator == 0) fail_at("zero denominator", den_at);
            }
            return Term{Integer(sign), std::move(lit), start};
        }
        return Term{Integer(sign), atom(), start};
    }

    Atom atom() {
        if (at_end()) fail("expected an atom");
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            RationalLiteral lit{integer(), 1, false};
            skip_space();
            if (!at_end() && peek() == '/') {
                advance();
                skip_space();
                Position den_at = here();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
                lit.denominator = integer();
                lit.has_slash = true;
                if (lit.denominator == 0) fail_at("zero denominator", den_at);
            }
            return lit;
        }
        if (c == '(') {
            advance();
            TupleLiteral t;
            for (;;) {
                skip_space();
                t.components.push_back(signed_integer());
                skip_space();
                if (at_end()) fail("unterminated tuple");
                if (peek() == ',') {
                    advance();
                    continue;
                }
                if (peek() == ')') {
                    advance();
                    break;
                }
                fail(std::string("expected ',' or ')', found '") + peek() + "'");
            }
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                name.push_back(peek());
                advance();
            }
            return Identifier{std::move(name)};
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Integer signed_integer() {
        int sign = 1;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            sign = peek() == '-' ? -1 : 1;
            advance();
            skip_space();
        }
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        return integer() * sign;
    }

    Integer integer() {
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits.push_back(peek());
            advance();
        }
        return Integer(digits, 10);
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    Position here() const { return {line_, column_}; }

    [[noreturn]] void fail(const std::string& message) const { fail_at(message, here()); }
    [[noreturn]] void fail_at(const std::string& message, Position p) const {
        throw ParseError(message, p.line, p.column);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_;
};

} // namespace

LinearExpression parse(std::string_view text, Position origin) {
    return Parser(text, origin).run();
}

} // namespace ordsemi::expr
