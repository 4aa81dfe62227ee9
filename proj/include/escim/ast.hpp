#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "escim/diagnostics.hpp"

namespace escim {

using NodeId = std::uint32_t;

enum class ExprKind {
    Literal,
    VariableRef,
    GlobalRef,           // ::x
    MemberAccess,        // children[0].text
    Index,               // children[0][children[1]]
    Call,                // text(children...)
    UnaryOp,
    BinaryOp,
    Assignment,          // children[0] = children[1]
    CompoundAssignment,  // children[0] op= children[1]
    Increment,           // children[0]++
    Decrement,           // children[0]--
};

enum class LiteralKind { Int, Float, Bool, String };

/// Expression node. `text` holds the literal spelling, the referenced name,
/// the member name or the callee, depending on `kind`.
struct Expr {
    ExprKind kind = ExprKind::Literal;
    NodeId id = 0;
    SourceSpan span;
    std::string text;
    std::string op;  // non-empty exactly for operator kinds
    LiteralKind literal = LiteralKind::Int;
    std::vector<Expr> children;

    bool is_operator() const;
    bool is_lvalue() const;
};

struct TypeName {
    std::string base;  // int, float, bool, void or a record name
    bool is_array = false;
    std::optional<std::int64_t> array_size;

    bool operator==(const TypeName&) const = default;
    std::string to_string() const;
};

enum class StmtKind {
    Declaration,
    Expression,
    If,
    Switch,
    While,
    DoWhile,
    For,
    Return,
    Break,
    Continue,
    Goto,
    Labeled,
    Block,
    Empty,
};

std::string_view to_string(StmtKind kind);

struct Stmt;

struct SwitchArm {
    NodeId id = 0;
    SourceSpan span;
    std::optional<Expr> label;  // nullopt for `default`
    std::vector<Stmt> body;
};

/// Statement node. Field use per kind:
///   Declaration  type, name, expr (initializer) or init_list
///   Expression   expr
///   If           expr (condition), body = {then} or {then, else}
///   Switch       expr, arms
///   While/DoWhile expr, body = {loop body}
///   For          init (0 or 1 Declaration/Expression stmt), expr (condition, optional),
///                update (optional), body = {loop body}
///   Return       expr (optional)
///   Goto         name (label)
///   Labeled      name (label), body = {stmt}
///   Block        body
struct Stmt {
    StmtKind kind = StmtKind::Empty;
    NodeId id = 0;
    SourceSpan span;
    TypeName type;
    std::string name;
    std::optional<Expr> expr;
    bool has_init_list = false;
    std::vector<Expr> init_list;
    std::optional<Expr> update;
    std::vector<Stmt> init;
    std::vector<Stmt> body;
    std::vector<SwitchArm> arms;

    bool is_structured() const;
};

struct Field {
    TypeName type;
    std::string name;
    SourceSpan span;
};

struct RecordDef {
    NodeId id = 0;
    SourceSpan span;
    std::string name;
    std::vector<Field> fields;
};

struct Param {
    NodeId id = 0;
    SourceSpan span;
    TypeName type;
    std::string name;
};

struct FunctionDef {
    NodeId id = 0;
    SourceSpan span;
    TypeName return_type;
    std::string name;
    std::vector<Param> params;
    Stmt body;  // always a Block
};

/// A top-level item: record definition, function definition, or global
/// declaration (a Declaration statement).
using Item = std::variant<RecordDef, FunctionDef, Stmt>;

struct SyntaxTree {
    std::string file;
    std::vector<Item> items;
    NodeId next_id = 1;  // one past the largest assigned id

    const FunctionDef* find_function(std::string_view name) const;
    FunctionDef* find_function(std::string_view name);
    std::vector<const FunctionDef*> functions() const;
};

/// Structural equality: compares everything except node ids and spans.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const SyntaxTree& a, const SyntaxTree& b);

/// Pre-order walks over every statement / expression of the tree.
void for_each_stmt(const Stmt& root, const std::function<void(const Stmt&)>& fn);
void for_each_expr(const Expr& root, const std::function<void(const Expr&)>& fn);
void for_each_expr(const Stmt& root, const std::function<void(const Expr&)>& fn);

/// Mutable variants used by the program transforms.
void for_each_stmt_mut(Stmt& root, const std::function<void(Stmt&)>& fn);
void for_each_expr_mut(Expr& root, const std::function<void(Expr&)>& fn);
void for_each_expr_mut(Stmt& root, const std::function<void(Expr&)>& fn);

/// Reassign node ids in textual pre-order starting at 1 and update
/// `tree.next_id`. The parser calls this; transforms call it after editing.
void renumber(SyntaxTree& tree);

/// Count of operator nodes (binary, unary, compound assignment, ++, --) in
/// an expression. Plain `=` is not counted.
unsigned count_operators(const Expr& e);

}  // namespace escim
