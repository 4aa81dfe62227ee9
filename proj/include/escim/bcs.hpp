#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "escim/scope.hpp"

namespace escim {

/// Basic control structures. FunctionCall and Recursion never label a
/// granule; they only select weights.
enum class BcsKind {
    Linear,
    Goto,
    IfBranch,
    CaseBranch,
    WhileLoop,
    DoWhileLoop,
    ForLoop,
    FunctionCall,
    Recursion,
};

inline constexpr BcsKind kAllBcsKinds[] = {
    BcsKind::Linear,      BcsKind::Goto,    BcsKind::IfBranch,
    BcsKind::CaseBranch,  BcsKind::WhileLoop, BcsKind::DoWhileLoop,
    BcsKind::ForLoop,     BcsKind::FunctionCall, BcsKind::Recursion,
};

/// Config-file spelling: linear, goto, if, case, while, do_while, for, call, recursion.
std::string_view to_string(BcsKind kind);
std::optional<BcsKind> parse_bcs_kind(std::string_view text);

BcsKind classify_bcs(const Stmt& stmt);

enum class SiblingRelation { Sequence, None };

struct Granule {
    std::vector<int> path;  // 1-based position at each level
    BcsKind kind = BcsKind::Linear;
    NodeId node = 0;             // the structured statement; 0 for leaves
    std::vector<NodeId> stmts;   // leaf: simple statements of the run
    std::vector<NodeId> anchors; // leaf: stmts plus attached headers
    unsigned calls = 0;          // leaf: calls to user-defined functions
    unsigned gotos = 0;          // leaf: goto statements
    std::vector<Granule> children;
    SiblingRelation relation_to_next = SiblingRelation::None;

    bool is_leaf() const { return kind == BcsKind::Linear; }
    std::string label() const;
};

std::string format_label(const std::vector<int>& path);

struct FunctionGranules {
    std::string name;
    NodeId function = 0;
    bool recursive = false;
    std::vector<Granule> roots;
};

struct GranuleTree {
    std::vector<FunctionGranules> functions;  // source order
};

/// Split every function body into the granule hierarchy. Blocks and labels
/// are transparent. Headers (conditions, for-init, update) attach to the
/// first leaf of the structure, or the last one for do-while whose condition
/// follows the body; an empty leaf is inserted when needed.
GranuleTree decompose(const SyntaxTree& tree);

/// Functions on a cycle of the static call graph.
std::set<std::string> detect_recursion(const SyntaxTree& tree);

enum class ErmRelation { Sequence, Include };

struct ErmFact {
    std::string left;
    ErmRelation rel = ErmRelation::Sequence;
    std::string right;

    bool operator==(const ErmFact&) const = default;
};

using ErmExpression = std::vector<ErmFact>;

/// Sibling sequence facts first, then for each sibling its include facts
/// followed by the facts of its children.
ErmExpression serialize_erm(const FunctionGranules& function);
ErmExpression serialize_erm(const std::vector<Granule>& roots);

/// `G1 -> G2` or `G2 > G(2,1)`.
std::string render_fact(const ErmFact& fact);
/// One fact per line.
std::string render_erm(const ErmExpression& erm);
ErmExpression parse_erm(std::string_view text);

}  // namespace escim
