#include "escim/analysis.hpp"

#include <cstdio>

#include "escim/parser.hpp"

namespace escim {

Analysis analyze_tree(SyntaxTree tree, std::string source) {
    Analysis a;
    a.file = tree.file;
    a.source = std::move(source);
    a.tree = std::move(tree);
    a.scopes = build_scope_tree(a.tree);
    a.occurrences = resolve_occurrences(a.tree, a.scopes);
    a.ledger = build_ledger(a.occurrences, a.tree, a.scopes);
    a.granules = decompose(a.tree);
    return a;
}

Analysis analyze_source(std::string source, std::string file) {
    SyntaxTree tree = parse_source(source, file);
    return analyze_tree(std::move(tree), std::move(source));
}

MetricsReport make_report(const Analysis& analysis, const WeightTable& weights, SiMode mode) {
    MetricsReport r = escim(analysis.granules, analysis.ledger, weights, mode);
    r.file = analysis.file;
    r.loc = loc(analysis.source.empty() ? pretty_print(analysis.tree) : analysis.source);
    r.i_l = info_icn(Region::whole(), analysis.ledger);
    r.efficiency = coding_efficiency(r.escim, r.loc);
    r.cyclomatic = cyclomatic(analysis.tree);
    return r;
}

std::optional<Emit> parse_emit(std::string_view text) {
    if (text == "metrics") return Emit::Metrics;
    if (text == "erm") return Emit::Erm;
    if (text == "ledger") return Emit::Ledger;
    if (text == "granules") return Emit::Granules;
    return std::nullopt;
}

namespace {

using ojson = nlohmann::ordered_json;

std::string scope_label(const ScopeTree& scopes, ScopeId id) {
    const Scope& s = scopes.scopes.at(id);
    std::string out(to_string(s.kind));
    if (s.kind != ScopeKind::Global) out += '@' + std::to_string(s.span.line_start);
    return out;
}

ojson span_json(const SourceSpan& s) {
    return ojson{{"file", s.file},
                 {"line_start", s.line_start},
                 {"col_start", s.col_start},
                 {"line_end", s.line_end},
                 {"col_end", s.col_end}};
}

}  // namespace

nlohmann::ordered_json ledger_json(const Analysis& analysis) {
    ojson out = ojson::array();
    for (const LedgerEntry& e : analysis.ledger.entries()) {
        const ScopedVariable& v = analysis.scopes.variable(e.occurrence.variable);
        ojson row{{"ordinal", e.occurrence.ordinal},
                  {"variable", v.name},
                  {"variable_id", v.id},
                  {"scope", scope_label(analysis.scopes, v.scope)},
                  {"role", to_string(e.occurrence.role)},
                  {"delta", e.delta},
                  {"icn_after", e.icn_after},
                  {"sicn_after", e.sicn_after}};
        if (e.occurrence.member) row["member"] = *e.occurrence.member;
        out.push_back(std::move(row));
    }
    return out;
}

nlohmann::ordered_json diagnostic_json(const Error& error) {
    ojson d{{"kind", error.kind()}, {"message", error.detail()}};
    if (error.span()) d["span"] = span_json(*error.span());
    return d;
}

nlohmann::ordered_json report_json(const MetricsReport& report, const Analysis& analysis,
                                   const std::set<Emit>& emit) {
    ojson out;
    out["file"] = report.file;
    out["si_mode"] = to_string(report.si_mode);
    out["loc"] = report.loc;
    out["i_l"] = report.i_l;
    out["escim"] = report.escim;
    out["efficiency"] = report.efficiency.value();
    out["efficiency_exact"] = report.efficiency.to_string();
    if (emit.contains(Emit::Metrics)) {
        out["cyclomatic"] = report.cyclomatic;
        ojson weights = ojson::object();
        for (const auto& [kind, w] : report.weights.entries()) weights[std::string(to_string(kind))] = w;
        out["weights"] = std::move(weights);
        ojson vars = ojson::array();
        const Region whole = Region::whole();
        for (const ScopedVariable& v : analysis.scopes.variables)
            vars.push_back({{"name", v.name},
                            {"id", v.id},
                            {"scope", scope_label(analysis.scopes, v.scope)},
                            {"sicn_max", sicn_max(v.id, whole, analysis.ledger)}});
        out["variables"] = std::move(vars);
        ojson icn = ojson::object();
        for (const std::string& name : analysis.ledger.names())
            icn[name] = icn_max(name, whole, analysis.ledger);
        out["icn"] = std::move(icn);
    }
    ojson functions = ojson::array();
    for (const FunctionReport& f : report.functions) {
        ojson fj{{"name", f.name}, {"recursive", f.recursive}, {"escim", f.escim}, {"si_total", f.si_total}};
        if (emit.contains(Emit::Granules)) {
            ojson gs = ojson::array();
            for (const GranuleReport& g : f.granules)
                gs.push_back({{"label", g.label},
                              {"kind", to_string(g.kind)},
                              {"weight", g.weight},
                              {"si", g.si},
                              {"ancestor_product", g.ancestor_product},
                              {"calls", g.calls},
                              {"gotos", g.gotos},
                              {"term", g.term}});
            fj["granules"] = std::move(gs);
        }
        if (emit.contains(Emit::Erm)) {
            ojson facts = ojson::array();
            for (const ErmFact& fact : f.erm) facts.push_back(render_fact(fact));
            fj["erm"] = std::move(facts);
        }
        functions.push_back(std::move(fj));
    }
    out["functions"] = std::move(functions);
    if (emit.contains(Emit::Ledger)) out["ledger"] = ledger_json(analysis);
    out["diagnostics"] = ojson::array();
    return out;
}

std::string report_text(const MetricsReport& report, const Analysis& analysis,
                        const std::set<Emit>& emit) {
    std::string out;
    char line[256];
    out += "file: " + report.file + '\n';
    out += "si mode: " + std::string(to_string(report.si_mode)) + '\n';
    std::snprintf(line, sizeof line, "LOC %llu  I(L) %llu  ESCIM %llu  E %s  cyclomatic %llu\n",
                  static_cast<unsigned long long>(report.loc),
                  static_cast<unsigned long long>(report.i_l),
                  static_cast<unsigned long long>(report.escim), report.efficiency.to_string().c_str(),
                  static_cast<unsigned long long>(report.cyclomatic));
    out += line;
    if (emit.contains(Emit::Metrics)) {
        out += "\nvariables:\n";
        for (const ScopedVariable& v : analysis.scopes.variables) {
            std::snprintf(line, sizeof line, "  %-16s %-18s SICN_max %u\n", v.name.c_str(),
                          scope_label(analysis.scopes, v.scope).c_str(),
                          sicn_max(v.id, Region::whole(), analysis.ledger));
            out += line;
        }
    }
    for (const FunctionReport& f : report.functions) {
        std::snprintf(line, sizeof line, "\nfunction %s%s  ESCIM %llu  SI %llu\n", f.name.c_str(),
                      f.recursive ? " (recursive)" : "", static_cast<unsigned long long>(f.escim),
                      static_cast<unsigned long long>(f.si_total));
        out += line;
        if (emit.contains(Emit::Granules) && !f.granules.empty()) {
            std::snprintf(line, sizeof line, "  %-14s %-9s %6s %6s %8s %8s\n", "granule", "kind", "weight",
                          "si", "ancestor", "term");
            out += line;
            for (const GranuleReport& g : f.granules) {
                std::snprintf(line, sizeof line, "  %-14s %-9s %6llu %6llu %8llu %8llu\n", g.label.c_str(),
                              std::string(to_string(g.kind)).c_str(),
                              static_cast<unsigned long long>(g.weight),
                              static_cast<unsigned long long>(g.si),
                              static_cast<unsigned long long>(g.ancestor_product),
                              static_cast<unsigned long long>(g.term));
                out += line;
            }
        }
        if (emit.contains(Emit::Erm) && !f.erm.empty()) {
            out += "  erm:\n";
            for (const ErmFact& fact : f.erm) out += "    " + render_fact(fact) + '\n';
        }
    }
    if (emit.contains(Emit::Ledger)) {
        out += "\nledger:\n";
        for (const LedgerEntry& e : analysis.ledger.entries()) {
            std::snprintf(line, sizeof line, "  %4zu %-16s %-18s delta %u icn %u sicn %u\n",
                          e.occurrence.ordinal, e.name.c_str(),
                          std::string(to_string(e.occurrence.role)).c_str(), e.delta, e.icn_after,
                          e.sicn_after);
            out += line;
        }
    }
    return out;
}

}  // namespace escim
