#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "escim/ast.hpp"
#include "escim/lexer.hpp"

namespace escim {

/// Recursive-descent parser for MiniC. Node ids are assigned in pre-order
/// starting at 1. Throws ParseError carrying the expected-token set.
SyntaxTree parse(const std::vector<Token>& tokens, const std::string& file = {});

/// tokenize + parse.
SyntaxTree parse_source(std::string_view source, const std::string& file = {});

/// Canonical source rendering. parse_source(pretty_print(t)) is structurally
/// equal to t for every tree the parser produces.
std::string pretty_print(const SyntaxTree& tree);
std::string pretty_print(const Stmt& stmt, int indent = 0);
std::string pretty_print(const Expr& expr);

}  // namespace escim
