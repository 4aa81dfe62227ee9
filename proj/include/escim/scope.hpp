#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "escim/ast.hpp"

namespace escim {

using ScopeId = std::uint32_t;
using VarId = std::uint32_t;

enum class ScopeKind { Global, Function, Block, ForInit, SwitchBody };

std::string_view to_string(ScopeKind kind);

struct Scope {
    std::optional<ScopeId> parent;
    ScopeKind kind = ScopeKind::Global;
    SourceSpan span;
    NodeId owner = 0;  // node that opens the scope (0 for the global scope)
};

/// A variable as seen from its own scope. Two declarations of the same name
/// in different scopes are different ScopedVariables.
struct ScopedVariable {
    VarId id = 0;
    std::string name;
    ScopeId scope = 0;
    SourceSpan decl_span;
    NodeId decl_node = 0;  // Declaration statement or Param node
    TypeName type;
    bool is_record = false;
    bool is_param = false;
    std::vector<std::string> members;  // non-empty iff is_record
};

/// Lexical scopes of a program plus every variable registered in them.
struct ScopeTree {
    std::vector<Scope> scopes;
    ScopeId root = 0;
    std::vector<ScopedVariable> variables;
    std::unordered_map<NodeId, ScopeId> scope_of_owner;
    std::unordered_map<NodeId, VarId> variable_of_decl;

    const ScopedVariable& variable(VarId id) const { return variables.at(id); }
    std::vector<VarId> variables_named(std::string_view name) const;
    /// True when `inner` is `outer` or nested inside it.
    bool is_within(ScopeId inner, ScopeId outer) const;
};

enum class OccurrenceRole { Declaration, AssignmentTarget, Read };

std::string_view to_string(OccurrenceRole role);

/// One appearance of a variable in the program text.
///
/// `anchor` is the statement the occurrence is attributed to: the innermost
/// enclosing statement, except that the header of an if/switch/loop (its
/// condition, for-init and update) anchors to the structured statement
/// itself. Parameters anchor to their function. `context` is the node whose
/// operators are counted when this occurrence is an assignment target: the
/// full expression root, or the declaration for initializers.
struct OccurrenceRef {
    VarId variable = 0;
    std::optional<std::string> member;
    NodeId node = 0;
    std::size_t ordinal = 0;
    OccurrenceRole role = OccurrenceRole::Read;
    NodeId anchor = 0;
    NodeId context = 0;
    std::string function;  // enclosing function, empty at global level
};

/// Build scopes and register every declaration. Throws DuplicateDeclaration
/// when a name is declared twice in one scope (variables, functions,
/// records, labels) and UnresolvedName for unknown record types.
ScopeTree build_scope_tree(const SyntaxTree& tree);

/// Bind every identifier to its declaration, in textual order. A name is
/// visible from the end of its declaration onward; `::x` binds to the global
/// `x`. Throws UnresolvedName when nothing is visible, or for unknown
/// callees, members and goto labels.
std::vector<OccurrenceRef> resolve_occurrences(const SyntaxTree& tree, const ScopeTree& scopes);

/// Names callable without a definition.
bool is_builtin_function(std::string_view name);

}  // namespace escim
