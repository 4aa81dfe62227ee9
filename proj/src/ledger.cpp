#include "escim/ledger.hpp"

#include <algorithm>
#include <unordered_map>

namespace escim {

std::string_view to_string(SiMode mode) {
    switch (mode) {
        case SiMode::Delta: return "delta";
        case SiMode::MinMax: return "minmax";
        case SiMode::Absolute: return "absolute";
    }
    return "?";
}

std::optional<SiMode> parse_si_mode(std::string_view text) {
    if (text == "delta") return SiMode::Delta;
    if (text == "minmax") return SiMode::MinMax;
    if (text == "absolute") return SiMode::Absolute;
    return std::nullopt;
}

OccurrenceLedger::OccurrenceLedger(std::vector<LedgerEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        by_variable_[entries_[i].occurrence.variable].push_back(i);
        by_name_[entries_[i].name].push_back(i);
    }
}

const std::vector<std::size_t>& OccurrenceLedger::of_variable(VarId id) const {
    static const std::vector<std::size_t> none;
    auto it = by_variable_.find(id);
    return it == by_variable_.end() ? none : it->second;
}

const std::vector<std::size_t>& OccurrenceLedger::of_name(std::string_view name) const {
    static const std::vector<std::size_t> none;
    auto it = by_name_.find(name);
    return it == by_name_.end() ? none : it->second;
}

std::vector<VarId> OccurrenceLedger::variables() const {
    std::vector<VarId> out;
    for (const auto& [id, _] : by_variable_) out.push_back(id);
    return out;
}

std::vector<std::string> OccurrenceLedger::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : by_name_) out.push_back(name);
    return out;
}

namespace {

// Operator count of every node that can be an occurrence context.
std::unordered_map<NodeId, unsigned> context_operators(const SyntaxTree& tree) {
    std::unordered_map<NodeId, unsigned> ops;
    auto visit = [&](const Stmt& root) {
        for_each_stmt(root, [&](const Stmt& s) {
            if (s.kind == StmtKind::Declaration) {
                unsigned n = s.expr ? count_operators(*s.expr) : 0;
                for (const Expr& e : s.init_list) n += count_operators(e);
                ops[s.id] = n;
                return;
            }
            if (s.expr) ops[s.expr->id] = count_operators(*s.expr);
            if (s.update) ops[s.update->id] = count_operators(*s.update);
        });
    };
    for (const Item& item : tree.items) {
        if (const auto* fn = std::get_if<FunctionDef>(&item)) {
            for (const Param& p : fn->params) ops[p.id] = 0;
            visit(fn->body);
        } else if (const auto* s = std::get_if<Stmt>(&item)) {
            visit(*s);
        }
    }
    return ops;
}

}  // namespace

OccurrenceLedger build_ledger(const std::vector<OccurrenceRef>& occurrences,
                              const SyntaxTree& tree, const ScopeTree& scopes) {
    const auto ops = context_operators(tree);
    std::unordered_map<VarId, unsigned> sicn;
    std::unordered_map<std::string, unsigned> icn;
    std::vector<LedgerEntry> entries;
    entries.reserve(occurrences.size());
    for (const OccurrenceRef& ref : occurrences) {
        LedgerEntry e;
        e.occurrence = ref;
        e.name = scopes.variable(ref.variable).name;
        if (ref.role == OccurrenceRole::AssignmentTarget) {
            auto it = ops.find(ref.context);
            if (it == ops.end())
                throw InconsistentInput("occurrence context " + std::to_string(ref.context) +
                                        " is not a statement or expression root");
            e.delta = 1 + it->second;
        }
        // A member assignment adds to the record variable's count, so the
        // record's SICN is the sum of its members'.
        e.sicn_after = sicn[ref.variable] += e.delta;
        e.icn_after = icn[e.name] += e.delta;
        entries.push_back(std::move(e));
    }
    OccurrenceLedger ledger(std::move(entries));
    std::unordered_set<NodeId> nodes;
    for (const Item& item : tree.items) {
        if (const auto* fn = std::get_if<FunctionDef>(&item)) {
            nodes.insert(fn->id);
            for (const Param& p : fn->params) nodes.insert(p.id);
            for_each_stmt(fn->body, [&](const Stmt& s) { nodes.insert(s.id); });
        } else if (const auto* s = std::get_if<Stmt>(&item)) {
            nodes.insert(s->id);
        }
    }
    ledger.set_tree_nodes(std::move(nodes));
    return ledger;
}

Region Region::function(std::string name) {
    Region r;
    r.function_ = std::move(name);
    return r;
}

Region Region::anchors(std::unordered_set<NodeId> ids) {
    Region r;
    r.anchors_ = std::move(ids);
    return r;
}

bool Region::contains(const OccurrenceRef& ref) const {
    if (function_ && ref.function != *function_) return false;
    if (anchors_ && !anchors_->contains(ref.anchor)) return false;
    return true;
}

namespace {

struct Extent {
    bool any = false;
    unsigned min = 0;
    unsigned max = 0;
    unsigned delta_sum = 0;
};

Extent extent(const std::vector<std::size_t>& indices, const Region& region,
              const OccurrenceLedger& ledger, bool by_name) {
    Extent x;
    for (std::size_t i : indices) {
        const LedgerEntry& e = ledger.entries()[i];
        if (!region.contains(e.occurrence)) continue;
        const unsigned value = by_name ? e.icn_after : e.sicn_after;
        if (!x.any) {
            x.min = x.max = value;
            x.any = true;
        }
        x.min = std::min(x.min, value);
        x.max = std::max(x.max, value);
        x.delta_sum += e.delta;
    }
    return x;
}

}  // namespace

unsigned sicn_max(VarId variable, const Region& region, const OccurrenceLedger& ledger) {
    return extent(ledger.of_variable(variable), region, ledger, false).max;
}

unsigned sicn_min(VarId variable, const Region& region, const OccurrenceLedger& ledger) {
    return extent(ledger.of_variable(variable), region, ledger, false).min;
}

unsigned icn_max(std::string_view name, const Region& region, const OccurrenceLedger& ledger) {
    return extent(ledger.of_name(name), region, ledger, true).max;
}

unsigned si(const Region& region, const OccurrenceLedger& ledger, SiMode mode) {
    unsigned total = 0;
    for (VarId v : ledger.variables()) {
        const Extent x = extent(ledger.of_variable(v), region, ledger, false);
        if (!x.any) continue;
        switch (mode) {
            case SiMode::Delta: total += x.delta_sum; break;
            case SiMode::MinMax: total += x.max - x.min; break;
            case SiMode::Absolute: total += x.max; break;
        }
    }
    return total;
}

unsigned info_icn(const Region& region, const OccurrenceLedger& ledger) {
    unsigned total = 0;
    for (const std::string& name : ledger.names())
        total += extent(ledger.of_name(name), region, ledger, true).max;
    return total;
}

}  // namespace escim
