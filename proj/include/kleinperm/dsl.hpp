#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kleinperm/module.hpp"

namespace kleinperm {

/// Textual form of a module diagram. Edges map a source node to a linear
/// combination of nodes; the E-family's dashed edge is just a combination
/// with several terms.
struct DiagramAst {
    FieldSpec field;
    std::string name;
    std::vector<std::string> nodes;

    struct Edge {
        std::size_t src;
        std::vector<std::pair<Elem, std::size_t>> targets;  // empty = annihilated
    };
    std::vector<Edge> a_edges;
    std::vector<Edge> b_edges;
};

struct ParseError {
    enum class Kind { Syntax, UnknownNode, DuplicateNode };
    Kind kind = Kind::Syntax;
    std::size_t line = 1;
    std::size_t col = 1;
    std::string message;

    std::string to_string() const;
};

struct ParseResult {
    std::optional<DiagramAst> ast;
    std::optional<ParseError> error;

    bool ok() const { return ast.has_value(); }
};

/// Grammar:
///   module <name> over <fieldspec> {
///     basis <name>... ;
///     a: <src> -> <lincomb> , ... ;
///     b: ... ;
///   }
/// where lincomb is `0` or `c*n + c*n + ...` with hex coefficients (a bare
/// node means coefficient 1). `#` starts a comment. Never throws; any input
/// yields an AST or a positioned diagnostic.
ParseResult parse_diagram(const std::string& text);

/// Builds the module; throws RelationViolation when the diagram breaks the
/// algebra relations.
KV4Module lower(const DiagramAst& ast);

/// DSL source for a module; decomposes first and names nodes per summand, so
/// parse(render(m)) lowers to a module isomorphic to m.
std::string render(const KV4Module& m);

/// Two-row ASCII diagrams, one block per summand.
std::string ascii_diagram(const KV4Module& m);

} // namespace kleinperm
