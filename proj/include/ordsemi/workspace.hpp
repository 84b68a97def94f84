#pragma once

// Workspace documents: named backends, pointed backends and families.
//
//   # comment
//   [backend q2]
//   kind = quadratic        rational | rational-positives | quadratic |
//   p = 0                   dyadic | lexz2 | heisenberg | naturals
//   q = 1
//   d = 2
//
//   [point root2]
//   backend = q2
//   base = a + b
//
//   [family pair]
//   members = root2, half
//
// Names are unique across the document. A document backend may shadow a
// built-in one; references may point forwards.

#include "ordsemi/coproduct.hpp"
#include "ordsemi/exemplars.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ordsemi {

struct NamedBackend {
    BackendPtr backend;
    expr::Position position;
    bool builtin = false;
};

struct NamedPoint {
    std::string backend;
    PointedBackend point;
    expr::Position position;
};

struct NamedFamily {
    std::vector<std::string> members; // member i + 1 is members[i]
    FamilyPtr family;
    expr::Position position;
};

struct WorkspaceDocument {
    std::map<std::string, NamedBackend> backends;
    std::map<std::string, NamedPoint> points;
    std::map<std::string, NamedFamily> families;

    /// rational, rational-positives, dyadic, lexz2, heisenberg, naturals,
    /// sqrt2, sqrt3 and golden.
    static WorkspaceDocument builtins();
};

/// Parses and resolves a document on top of the built-ins. Throws
/// ParseError at the first problem: syntax, duplicate names (reported at
/// the second definition), dangling references and descriptor errors.
WorkspaceDocument parse_workspace(std::string_view text);

} // namespace ordsemi
