#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace escim {

/// 1-based source range; end is inclusive of the last character.
struct SourceSpan {
    std::string file;
    int line_start = 1;
    int col_start = 1;
    int line_end = 1;
    int col_end = 1;

    /// True when `inner` lies within this span (file is ignored).
    bool contains(const SourceSpan& inner) const;
    std::string to_string() const;
};

/// Merge two spans into the smallest span covering both.
SourceSpan cover(const SourceSpan& a, const SourceSpan& b);

/// Base class of every error raised by the analysis pipeline.
///
/// `kind()` is a stable machine-readable tag (e.g. "ParseError") that the CLI
/// copies into its diagnostics output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message,
          std::optional<SourceSpan> span = std::nullopt);

    const std::string& kind() const noexcept { return kind_; }
    const std::optional<SourceSpan>& span() const noexcept { return span_; }
    /// Message without the location prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string kind_;
    std::string detail_;
    std::optional<SourceSpan> span_;
};

class LexError : public Error {
public:
    LexError(const std::string& message, SourceSpan span)
        : Error("LexError", message, std::move(span)) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, SourceSpan span,
               std::vector<std::string> expected = {});
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::vector<std::string> expected_;
};

class DuplicateDeclaration : public Error {
public:
    DuplicateDeclaration(const std::string& message, SourceSpan span)
        : Error("DuplicateDeclaration", message, std::move(span)) {}
};

class UnresolvedName : public Error {
public:
    UnresolvedName(const std::string& message, SourceSpan span)
        : Error("UnresolvedName", message, std::move(span)) {}
};

class ErmSyntaxError : public Error {
public:
    explicit ErmSyntaxError(const std::string& message) : Error("ErmSyntaxError", message) {}
};

class EmptyProgram : public Error {
public:
    explicit EmptyProgram(const std::string& message) : Error("EmptyProgram", message) {}
};

class InconsistentInput : public Error {
public:
    explicit InconsistentInput(const std::string& message)
        : Error("InconsistentInput", message) {}
};

class ComposeError : public Error {
public:
    explicit ComposeError(const std::string& message) : Error("ComposeError", message) {}
};

class RenameCollision : public Error {
public:
    explicit RenameCollision(const std::string& message)
        : Error("RenameCollision", message) {}
};

class InvalidPermutation : public Error {
public:
    explicit InvalidPermutation(const std::string& message)
        : Error("InvalidPermutation", message) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("ConfigError", message) {}
};

}  // namespace escim
