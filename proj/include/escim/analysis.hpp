#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "escim/metrics.hpp"

namespace escim {

/// Every intermediate product of one file's analysis.
struct Analysis {
    std::string file;
    std::string source;
    SyntaxTree tree;
    ScopeTree scopes;
    std::vector<OccurrenceRef> occurrences;
    OccurrenceLedger ledger;
    GranuleTree granules;
};

/// Lex, parse, resolve, build the ledger and decompose. Throws the first
/// Error encountered.
Analysis analyze_source(std::string source, std::string file);
Analysis analyze_tree(SyntaxTree tree, std::string source = {});

/// Full report: ESCIM plus LOC, I(L), efficiency and cyclomatic number. LOC
/// comes from the source text, or from the pretty-printed tree when the
/// analysis has no source.
MetricsReport make_report(const Analysis& analysis, const WeightTable& weights, SiMode mode);

enum class Emit { Metrics, Erm, Ledger, Granules };
std::optional<Emit> parse_emit(std::string_view text);

nlohmann::ordered_json report_json(const MetricsReport& report, const Analysis& analysis,
                                   const std::set<Emit>& emit);
std::string report_text(const MetricsReport& report, const Analysis& analysis,
                        const std::set<Emit>& emit);

nlohmann::ordered_json ledger_json(const Analysis& analysis);
nlohmann::ordered_json diagnostic_json(const Error& error);

}  // namespace escim
