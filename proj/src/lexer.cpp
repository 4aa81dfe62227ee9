#include "escim/lexer.hpp"

#include <array>
#include <cctype>

namespace escim {

namespace {

constexpr std::array<std::string_view, 19> kKeywords = {
    "struct", "int",   "float", "bool",    "void",     "if",   "else",
    "switch", "case",  "default", "while", "do",       "for",  "return",
    "break",  "continue", "goto", "true",  "false",
};

// Longest match first.
constexpr std::array<std::string_view, 24> kOperators = {
    "::", "+=", "-=", "*=", "/=", "%=", "++", "--", "<=", ">=", "==", "!=", "&&",
    "||", "=",  "+",  "-",  "*",  "/",  "%",  "<",  ">",  "!",  ".",
};

constexpr std::string_view kPunctuation = "(){}[];,:";

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (at_end()) break;
            out.push_back(next());
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    SourceSpan here() const { return SourceSpan{file_, line_, col_, line_, col_}; }

    void skip_trivia() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                SourceSpan start = here();
                advance();
                advance();
                bool closed = false;
                while (!at_end()) {
                    if (peek() == '*' && peek(1) == '/') {
                        advance();
                        advance();
                        closed = true;
                        break;
                    }
                    advance();
                }
                if (!closed) throw LexError("unterminated block comment", start);
            } else {
                break;
            }
        }
    }

    Token finish(TokenKind kind, std::size_t begin, SourceSpan start) {
        Token t;
        t.kind = kind;
        t.text = std::string(src_.substr(begin, pos_ - begin));
        t.span = start;
        t.span.line_end = last_line_;
        t.span.col_end = last_col_;
        return t;
    }

    void step() {
        last_line_ = line_;
        last_col_ = col_;
        advance();
    }

    Token next() {
        const std::size_t begin = pos_;
        const SourceSpan start = here();
        const char c = peek();

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                step();
            Token t = finish(TokenKind::Identifier, begin, start);
            if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (std::isdigit(static_cast<unsigned char>(peek()))) step();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                step();
                while (std::isdigit(static_cast<unsigned char>(peek()))) step();
                return finish(TokenKind::FloatLiteral, begin, start);
            }
            return finish(TokenKind::IntLiteral, begin, start);
        }
        if (c == '"') {
            step();
            while (true) {
                if (at_end() || peek() == '\n') throw LexError("unterminated string literal", start);
                if (peek() == '\\') {
                    step();
                    if (at_end()) throw LexError("unterminated string literal", start);
                    step();
                    continue;
                }
                if (peek() == '"') {
                    step();
                    break;
                }
                step();
            }
            return finish(TokenKind::StringLiteral, begin, start);
        }
        for (std::string_view op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                for (std::size_t i = 0; i < op.size(); ++i) step();
                return finish(TokenKind::Operator, begin, start);
            }
        }
        if (kPunctuation.find(c) != std::string_view::npos) {
            step();
            return finish(TokenKind::Punctuation, begin, start);
        }
        std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                                ? "byte 0x" + to_hex(static_cast<unsigned char>(c))
                                : std::string("'") + c + "'";
        throw LexError("illegal character " + shown, start);
    }

    static std::string to_hex(unsigned char b) {
        static constexpr char digits[] = "0123456789abcdef";
        return std::string{digits[b >> 4], digits[b & 0xf]};
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    int last_line_ = 1;
    int last_col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::IntLiteral: return "int-literal";
        case TokenKind::FloatLiteral: return "float-literal";
        case TokenKind::StringLiteral: return "string-literal";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Operator: return "operator";
        case TokenKind::Punctuation: return "punctuation";
        case TokenKind::EndOfInput: return "end-of-input";
    }
    return "?";
}

bool is_keyword(std::string_view word) {
    for (std::string_view k : kKeywords)
        if (k == word) return true;
    return false;
}

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
    return Lexer(source, file).run();
}

}  // namespace escim
