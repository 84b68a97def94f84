#pragma once

// Closed grammar for element expressions:
//
//   expression := ['+' | '-'] term (('+' | '-') term)*
//   term       := INTEGER '*' atom | atom
//   atom       := INTEGER ['/' INTEGER]            rational or dyadic literal
//               | '(' SIGNED (',' SIGNED)* ')'     tuple literal
//               | IDENT                            named generator
//
// Nothing is ever evaluated by the parser; backends interpret atoms.

#include "ordsemi/numeric.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ordsemi::expr {

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
};

struct RationalLiteral {
    Integer numerator;
    Integer denominator; // > 0; 1 when written as a bare integer
    bool has_slash = false;
};

struct TupleLiteral {
    std::vector<Integer> components;
};

struct Identifier {
    std::string name;
};

using Atom = std::variant<RationalLiteral, TupleLiteral, Identifier>;

struct Term {
    Integer coefficient; // signed; includes the leading '+'/'-'
    Atom atom;
    Position position;
};

struct LinearExpression {
    std::vector<Term> terms;
};

/// Parses `text`. Positions in errors are offset by `origin`, so
/// expressions embedded in a document report document coordinates.
LinearExpression parse(std::string_view text, Position origin = {});

} // namespace ordsemi::expr
