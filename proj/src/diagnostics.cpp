#include "escim/diagnostics.hpp"

#include <algorithm>
#include <utility>

namespace escim {

namespace {

bool before_or_equal(int l1, int c1, int l2, int c2) {
    return l1 < l2 || (l1 == l2 && c1 <= c2);
}

std::string with_location(const std::string& message, const std::optional<SourceSpan>& span) {
    if (!span) return message;
    return span->to_string() + ": " + message;
}

}  // namespace

bool SourceSpan::contains(const SourceSpan& inner) const {
    return before_or_equal(line_start, col_start, inner.line_start, inner.col_start) &&
           before_or_equal(inner.line_end, inner.col_end, line_end, col_end);
}

std::string SourceSpan::to_string() const {
    std::string out = file.empty() ? std::string("<input>") : file;
    out += ':' + std::to_string(line_start) + ':' + std::to_string(col_start);
    return out;
}

SourceSpan cover(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan out = a;
    if (!before_or_equal(a.line_start, a.col_start, b.line_start, b.col_start)) {
        out.line_start = b.line_start;
        out.col_start = b.col_start;
    }
    if (!before_or_equal(b.line_end, b.col_end, a.line_end, a.col_end)) {
        out.line_end = b.line_end;
        out.col_end = b.col_end;
    }
    return out;
}

Error::Error(std::string kind, const std::string& message, std::optional<SourceSpan> span)
    : std::runtime_error(with_location(message, span)),
      kind_(std::move(kind)),
      detail_(message),
      span_(std::move(span)) {}

ParseError::ParseError(const std::string& message, SourceSpan span,
                       std::vector<std::string> expected)
    : Error("ParseError", message, std::move(span)), expected_(std::move(expected)) {}

}  // namespace escim
