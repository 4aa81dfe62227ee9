#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "escim/diagnostics.hpp"

namespace escim {

enum class TokenKind {
    Identifier,
    IntLiteral,
    FloatLiteral,
    StringLiteral,
    Keyword,
    Operator,
    Punctuation,
    EndOfInput,
};

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::EndOfInput;
    std::string text;
    SourceSpan span;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
};

/// Split MiniC source into tokens. Comments and whitespace are dropped.
///
/// Throws LexError on an illegal character or an unterminated comment or
/// string literal. EndOfInput is never produced here; the parser synthesizes
/// it.
std::vector<Token> tokenize(std::string_view source, const std::string& file = {});

bool is_keyword(std::string_view word);

}  // namespace escim
