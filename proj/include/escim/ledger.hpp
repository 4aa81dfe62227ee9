#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "escim/scope.hpp"

namespace escim {

/// How SI(L) is read off the ledger.
///   Delta     sum of the changes made inside L (max minus value on entry)
///   MinMax    max minus min over the occurrences inside L
///   Absolute  sum of the maxima
enum class SiMode { Delta, MinMax, Absolute };

std::string_view to_string(SiMode mode);
std::optional<SiMode> parse_si_mode(std::string_view text);

struct LedgerEntry {
    OccurrenceRef occurrence;
    std::string name;
    unsigned delta = 0;
    unsigned icn_after = 0;   // running count keyed by name only
    unsigned sicn_after = 0;  // running count keyed by ScopedVariable
};

/// Ledger of every occurrence in textual order with its running counts.
class OccurrenceLedger {
public:
    OccurrenceLedger() = default;
    explicit OccurrenceLedger(std::vector<LedgerEntry> entries);

    const std::vector<LedgerEntry>& entries() const { return entries_; }
    /// Entry indices of one scoped variable, in ordinal order.
    const std::vector<std::size_t>& of_variable(VarId id) const;
    /// Entry indices of every variable with this name, in ordinal order.
    const std::vector<std::size_t>& of_name(std::string_view name) const;
    std::vector<VarId> variables() const;
    std::vector<std::string> names() const;

    /// Statement, parameter and function ids of the tree the ledger was built from.
    const std::unordered_set<NodeId>& tree_nodes() const { return tree_nodes_; }
    void set_tree_nodes(std::unordered_set<NodeId> nodes) { tree_nodes_ = std::move(nodes); }

private:
    std::vector<LedgerEntry> entries_;
    std::unordered_set<NodeId> tree_nodes_;
    std::map<VarId, std::vector<std::size_t>> by_variable_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_name_;
};

/// Occurrence delta: 0 for reads and bare declarations; for an assignment
/// target 1 plus the operators of the whole enclosing statement.
OccurrenceLedger build_ledger(const std::vector<OccurrenceRef>& occurrences,
                              const SyntaxTree& tree, const ScopeTree& scopes);

/// A set of occurrences selected by anchor statement. Default-constructed
/// regions select everything.
class Region {
public:
    static Region whole() { return Region{}; }
    static Region function(std::string name);
    static Region anchors(std::unordered_set<NodeId> ids);

    bool contains(const OccurrenceRef& ref) const;

private:
    std::optional<std::string> function_;
    std::optional<std::unordered_set<NodeId>> anchors_;
};

/// Highest SICN of the variable's occurrences in the region, 0 if none.
unsigned sicn_max(VarId variable, const Region& region, const OccurrenceLedger& ledger);
/// Lowest SICN of the variable's occurrences in the region, 0 if none.
unsigned sicn_min(VarId variable, const Region& region, const OccurrenceLedger& ledger);
/// Name-blind counterpart of sicn_max.
unsigned icn_max(std::string_view name, const Region& region, const OccurrenceLedger& ledger);

unsigned si(const Region& region, const OccurrenceLedger& ledger, SiMode mode);

/// Baseline I(L): sum over names of icn_max.
unsigned info_icn(const Region& region, const OccurrenceLedger& ledger);

}  // namespace escim
