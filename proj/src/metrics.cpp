#include "escim/metrics.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace escim {

WeightTable::WeightTable()
    : weights_{{BcsKind::Linear, 1},     {BcsKind::Goto, 1},        {BcsKind::IfBranch, 2},
               {BcsKind::CaseBranch, 3}, {BcsKind::WhileLoop, 3},   {BcsKind::DoWhileLoop, 3},
               {BcsKind::ForLoop, 3},    {BcsKind::FunctionCall, 2}, {BcsKind::Recursion, 3}} {}

void WeightTable::set(BcsKind kind, std::uint64_t weight) {
    if (weight < 1)
        throw ConfigError("weight for '" + std::string(to_string(kind)) + "' must be at least 1");
    weights_[kind] = weight;
}

WeightTable WeightTable::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("weight table is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("weight table must be a JSON object");
    WeightTable table;
    for (const auto& [key, value] : doc.items()) {
        auto kind = parse_bcs_kind(key);
        if (!kind) throw ConfigError("unknown BCS kind '" + key + "' in weight table");
        if (!value.is_number_integer() || value.get<std::int64_t>() < 1)
            throw ConfigError("weight for '" + key + "' must be an integer >= 1");
        table.set(*kind, value.get<std::uint64_t>());
    }
    return table;
}

WeightTable WeightTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read weight table '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + '/' + std::to_string(den);
}

namespace {

std::uint64_t power(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    while (exp--) out *= base;
    return out;
}

struct Evaluator {
    const OccurrenceLedger& ledger;
    const WeightTable& weights;
    SiMode mode;
    FunctionReport& report;

    // Returns the summed term of the subtree; appends reports in pre-order.
    std::uint64_t visit(const Granule& g, std::uint64_t ancestor_product) {
        const std::size_t slot = report.granules.size();
        report.granules.push_back({});
        GranuleReport r;
        r.label = g.label();
        r.kind = g.kind;
        r.weight = weights[g.kind];
        r.ancestor_product = ancestor_product;
        if (g.is_leaf()) {
            for (NodeId id : g.anchors)
                if (!ledger.tree_nodes().contains(id))
                    throw InconsistentInput("granule " + r.label + " refers to node " +
                                            std::to_string(id) + " outside the analyzed tree");
            r.si = si(Region::anchors({g.anchors.begin(), g.anchors.end()}), ledger, mode);
            r.calls = g.calls;
            r.gotos = g.gotos;
            r.term = r.si * r.weight * ancestor_product *
                     power(weights[BcsKind::FunctionCall], g.calls) *
                     power(weights[BcsKind::Goto], g.gotos);
        } else {
            for (const Granule& c : g.children) {
                const std::size_t child_slot = report.granules.size();
                r.term += visit(c, ancestor_product * r.weight);
                r.si += report.granules[child_slot].si;
            }
        }
        report.granules[slot] = r;
        return r.term;
    }
};

}  // namespace

MetricsReport escim(const GranuleTree& granules, const OccurrenceLedger& ledger,
                    const WeightTable& weights, SiMode mode) {
    MetricsReport out;
    out.si_mode = mode;
    out.weights = weights;
    for (const FunctionGranules& fn : granules.functions) {
        FunctionReport f;
        f.name = fn.name;
        f.recursive = fn.recursive;
        Evaluator ev{ledger, weights, mode, f};
        std::uint64_t total = 0;
        for (const Granule& g : fn.roots) {
            const std::size_t slot = f.granules.size();
            total += ev.visit(g, 1);
            f.si_total += f.granules[slot].si;
        }
        if (fn.recursive) total *= weights[BcsKind::Recursion];
        f.escim = total;
        f.erm = serialize_erm(fn);
        out.escim += f.escim;
        out.functions.push_back(std::move(f));
    }
    return out;
}

std::uint64_t loc(std::string_view source) {
    std::uint64_t count = 0;
    bool in_block = false;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        std::size_t end = source.find('\n', pos);
        if (end == std::string_view::npos) end = source.size();
        std::string_view line = source.substr(pos, end - pos);
        bool significant = false;
        bool in_string = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            const char next = i + 1 < line.size() ? line[i + 1] : '\0';
            if (in_block) {
                if (c == '*' && next == '/') {
                    in_block = false;
                    ++i;
                }
            } else if (in_string) {
                if (c == '\\') ++i;
                else if (c == '"') in_string = false;
            } else if (c == '/' && next == '/') {
                break;
            } else if (c == '/' && next == '*') {
                in_block = true;
                ++i;
            } else if (c == '"') {
                in_string = significant = true;
            } else if (c != ' ' && c != '\t' && c != '\r' && c != '\f' && c != '\v') {
                significant = true;
            }
        }
        if (significant) ++count;
        pos = end + 1;
    }
    if (count == 0) throw EmptyProgram("source has no code lines");
    return count;
}

Rational coding_efficiency(std::uint64_t escim, std::uint64_t loc) {
    const std::uint64_t g = std::gcd(escim, loc);
    if (g == 0) return {0, 1};
    return {escim / g, loc / g};
}

std::uint64_t cyclomatic(const SyntaxTree& tree) {
    std::uint64_t total = 0;
    for (const FunctionDef* fn : tree.functions()) {
        std::uint64_t decisions = 0;
        for_each_stmt(fn->body, [&](const Stmt& s) {
            switch (s.kind) {
                case StmtKind::If:
                case StmtKind::While:
                case StmtKind::DoWhile:
                case StmtKind::For:
                    ++decisions;
                    break;
                case StmtKind::Switch:
                    for (const SwitchArm& arm : s.arms)
                        if (arm.label) ++decisions;
                    break;
                default:
                    break;
            }
        });
        for_each_expr(fn->body, [&](const Expr& e) {
            if (e.kind == ExprKind::BinaryOp && (e.op == "&&" || e.op == "||")) ++decisions;
        });
        total += 1 + decisions;
    }
    return total;
}

}  // namespace escim
