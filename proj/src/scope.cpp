#include "escim/scope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace escim {

std::string_view to_string(ScopeKind kind) {
    switch (kind) {
        case ScopeKind::Global: return "global";
        case ScopeKind::Function: return "function";
        case ScopeKind::Block: return "block";
        case ScopeKind::ForInit: return "for-init";
        case ScopeKind::SwitchBody: return "switch-body";
    }
    return "?";
}

std::string_view to_string(OccurrenceRole role) {
    switch (role) {
        case OccurrenceRole::Declaration: return "declaration";
        case OccurrenceRole::AssignmentTarget: return "assignment-target";
        case OccurrenceRole::Read: return "read";
    }
    return "?";
}

bool is_builtin_function(std::string_view name) { return name == "print" || name == "read"; }

std::vector<VarId> ScopeTree::variables_named(std::string_view name) const {
    std::vector<VarId> out;
    for (const ScopedVariable& v : variables)
        if (v.name == name) out.push_back(v.id);
    return out;
}

bool ScopeTree::is_within(ScopeId inner, ScopeId outer) const {
    std::optional<ScopeId> cur = inner;
    while (cur) {
        if (*cur == outer) return true;
        cur = scopes.at(*cur).parent;
    }
    return false;
}

namespace {

// One traversal serves both phases. In the build phase scopes and variables
// are created; in the resolve phase they are looked up by owner/declaration
// node and identifier uses are bound.
class Walker {
public:
    // Build phase: `building` is the tree being filled. Resolve phase: it is null.
    Walker(const SyntaxTree& tree, const ScopeTree& scopes, ScopeTree* building)
        : tree_(tree), scopes_(scopes), build_(building), resolving_(building == nullptr) {}

    std::vector<OccurrenceRef> run() {
        collect_top_level();
        if (!resolving_) {
            *build_ = ScopeTree{};
            Scope global;
            global.kind = ScopeKind::Global;
            global.span = tree_span();
            build_->scopes.push_back(global);
            build_->root = 0;
        }
        stack_.push_back(Frame{scopes_.root, {}});
        for (const Item& item : tree_.items) {
            if (const auto* fn = std::get_if<FunctionDef>(&item)) {
                function(*fn);
            } else if (const auto* decl = std::get_if<Stmt>(&item)) {
                anchor_ = decl->id;
                function_name_.clear();
                declaration(*decl);
            }
        }
        return std::move(out_);
    }

private:
    struct Frame {
        ScopeId scope;
        std::map<std::string, VarId, std::less<>> visible;
    };

    SourceSpan tree_span() const {
        SourceSpan span{tree_.file, 1, 1, 1, 1};
        bool first = true;
        for (const Item& item : tree_.items) {
            SourceSpan s = std::visit([](const auto& x) { return x.span; }, item);
            span = first ? s : cover(span, s);
            first = false;
        }
        return span;
    }

    void collect_top_level() {
        records_.clear();
        functions_.clear();
        for (const Item& item : tree_.items) {
            if (const auto* r = std::get_if<RecordDef>(&item)) {
                if (!records_.emplace(r->name, r).second)
                    throw DuplicateDeclaration("record '" + r->name + "' is defined twice", r->span);
            } else if (const auto* f = std::get_if<FunctionDef>(&item)) {
                if (is_builtin_function(f->name))
                    throw DuplicateDeclaration("'" + f->name + "' redefines a builtin", f->span);
                if (!functions_.insert(f->name).second)
                    throw DuplicateDeclaration("function '" + f->name + "' is defined twice",
                                               f->span);
            }
        }
    }

    ScopeId open_scope(ScopeKind kind, NodeId owner, const SourceSpan& span) {
        ScopeId id;
        if (resolving_) {
            id = scopes_.scope_of_owner.at(owner);
        } else {
            id = static_cast<ScopeId>(build_->scopes.size());
            Scope s;
            s.parent = stack_.back().scope;
            s.kind = kind;
            s.span = span;
            s.owner = owner;
            build_->scopes.push_back(s);
            build_->scope_of_owner.emplace(owner, id);
        }
        stack_.push_back(Frame{id, {}});
        return id;
    }

    void close_scope() { stack_.pop_back(); }

    VarId declare(const std::string& name, const TypeName& type, NodeId node,
                  const SourceSpan& span, bool is_param) {
        Frame& frame = stack_.back();
        VarId id;
        if (resolving_) {
            id = scopes_.variable_of_decl.at(node);
        } else {
            for (const ScopedVariable& v : scopes_.variables)
                if (v.scope == frame.scope && v.name == name)
                    throw DuplicateDeclaration("'" + name + "' is already declared in this scope",
                                               span);
            ScopedVariable v;
            v.id = static_cast<VarId>(build_->variables.size());
            v.name = name;
            v.scope = frame.scope;
            v.decl_span = span;
            v.decl_node = node;
            v.type = type;
            v.is_param = is_param;
            if (type.base != "int" && type.base != "float" && type.base != "bool") {
                auto rec = records_.find(type.base);
                if (rec == records_.end())
                    throw UnresolvedName("unknown type '" + type.base + "'", span);
                v.is_record = true;
                for (const Field& f : rec->second->fields) v.members.push_back(f.name);
            }
            id = v.id;
            build_->variables.push_back(std::move(v));
            build_->variable_of_decl.emplace(node, id);
        }
        return id;
    }

    void make_visible(const std::string& name, VarId id) { stack_.back().visible[name] = id; }

    std::optional<VarId> lookup(const std::string& name) const {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            auto found = it->visible.find(name);
            if (found != it->visible.end()) return found->second;
        }
        return std::nullopt;
    }

    void emit(VarId var, std::optional<std::string> member, NodeId node, OccurrenceRole role) {
        if (!resolving_) return;
        OccurrenceRef ref;
        ref.variable = var;
        ref.member = std::move(member);
        ref.node = node;
        ref.ordinal = out_.size();
        ref.role = role;
        ref.anchor = anchor_;
        ref.context = context_;
        ref.function = function_name_;
        out_.push_back(std::move(ref));
    }

    // ---- items and statements ------------------------------------------------

    void function(const FunctionDef& fn) {
        function_name_ = fn.name;
        labels_.clear();
        for_each_stmt(fn.body, [&](const Stmt& s) {
            if (s.kind == StmtKind::Labeled && !labels_.insert(s.name).second)
                throw DuplicateDeclaration("label '" + s.name + "' is defined twice", s.span);
        });
        open_scope(ScopeKind::Function, fn.id, fn.span);
        anchor_ = fn.id;
        for (const Param& p : fn.params) {
            VarId id = declare(p.name, p.type, p.id, p.span, true);
            context_ = p.id;
            emit(id, std::nullopt, p.id, OccurrenceRole::Declaration);
            emit(id, std::nullopt, p.id, OccurrenceRole::AssignmentTarget);
            make_visible(p.name, id);
        }
        // The body block shares the function scope with the parameters.
        for (const Stmt& s : fn.body.body) statement(s);
        close_scope();
        function_name_.clear();
    }

    void declaration(const Stmt& s) {
        VarId id = declare(s.name, s.type, s.id, s.span, false);
        context_ = s.id;
        emit(id, std::nullopt, s.id, OccurrenceRole::Declaration);
        if (s.expr || s.has_init_list) emit(id, std::nullopt, s.id, OccurrenceRole::AssignmentTarget);
        if (s.expr) expression(*s.expr);
        for (const Expr& e : s.init_list) expression(e);
        make_visible(s.name, id);
    }

    void full_expression(const Expr& e) {
        context_ = e.id;
        expression(e);
    }

    void statement(const Stmt& s) {
        const NodeId saved_anchor = anchor_;
        anchor_ = s.id;
        switch (s.kind) {
            case StmtKind::Declaration:
                declaration(s);
                break;
            case StmtKind::Expression:
            case StmtKind::Return:
                if (s.expr) full_expression(*s.expr);
                break;
            case StmtKind::Block:
                open_scope(ScopeKind::Block, s.id, s.span);
                for (const Stmt& c : s.body) statement(c);
                close_scope();
                break;
            case StmtKind::If:
                full_expression(*s.expr);
                for (const Stmt& c : s.body) statement(c);
                break;
            case StmtKind::While:
                full_expression(*s.expr);
                statement(s.body[0]);
                break;
            case StmtKind::DoWhile:
                statement(s.body[0]);
                anchor_ = s.id;
                full_expression(*s.expr);
                break;
            case StmtKind::For:
                open_scope(ScopeKind::ForInit, s.id, s.span);
                for (const Stmt& init : s.init) {
                    if (init.kind == StmtKind::Declaration) {
                        declaration(init);
                    } else {
                        full_expression(*init.expr);
                    }
                }
                if (s.expr) full_expression(*s.expr);
                if (s.update) full_expression(*s.update);
                statement(s.body[0]);
                close_scope();
                break;
            case StmtKind::Switch:
                full_expression(*s.expr);
                open_scope(ScopeKind::SwitchBody, s.id, s.span);
                for (const SwitchArm& arm : s.arms)
                    for (const Stmt& c : arm.body) statement(c);
                close_scope();
                break;
            case StmtKind::Labeled:
                statement(s.body[0]);
                break;
            case StmtKind::Goto:
                if (resolving_ && !labels_.contains(s.name))
                    throw UnresolvedName("unknown label '" + s.name + "'", s.span);
                break;
            case StmtKind::Break:
            case StmtKind::Continue:
            case StmtKind::Empty:
                break;
        }
        anchor_ = saved_anchor;
    }

    // ---- expressions -------------------------------------------------------

    void expression(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Literal:
                return;
            case ExprKind::VariableRef:
            case ExprKind::GlobalRef:
            case ExprKind::Index:
            case ExprKind::MemberAccess:
                access(e, OccurrenceRole::Read, std::nullopt);
                return;
            case ExprKind::Assignment:
            case ExprKind::CompoundAssignment:
                access(e.children[0], OccurrenceRole::AssignmentTarget, std::nullopt);
                expression(e.children[1]);
                return;
            case ExprKind::Increment:
            case ExprKind::Decrement:
                access(e.children[0], OccurrenceRole::AssignmentTarget, std::nullopt);
                return;
            case ExprKind::Call:
                if (resolving_ && !is_builtin_function(e.text) && !functions_.contains(e.text))
                    throw UnresolvedName("unknown function '" + e.text + "'", e.span);
                for (const Expr& arg : e.children) expression(arg);
                return;
            case ExprKind::UnaryOp:
            case ExprKind::BinaryOp:
                for (const Expr& c : e.children) expression(c);
                return;
        }
    }

    // Walk an access path (x, ::x, a[i], r.m, a[i].m) down to its root
    // variable. The member closest to the root is the one recorded.
    void access(const Expr& e, OccurrenceRole role, std::optional<std::string> member) {
        switch (e.kind) {
            case ExprKind::VariableRef:
            case ExprKind::GlobalRef: {
                if (!resolving_) return;
                std::optional<VarId> var;
                if (e.kind == ExprKind::GlobalRef) {
                    auto it = stack_.front().visible.find(e.text);
                    if (it != stack_.front().visible.end()) var = it->second;
                } else {
                    var = lookup(e.text);
                }
                if (!var) {
                    std::string shown = (e.kind == ExprKind::GlobalRef ? "::" : "") + e.text;
                    throw UnresolvedName("'" + shown + "' is not declared", e.span);
                }
                const ScopedVariable& v = scopes_.variable(*var);
                if (member) {
                    if (!v.is_record)
                        throw UnresolvedName("'" + v.name + "' is not a record", e.span);
                    if (std::find(v.members.begin(), v.members.end(), *member) == v.members.end())
                        throw UnresolvedName(
                            "record '" + v.type.base + "' has no member '" + *member + "'", e.span);
                }
                emit(*var, std::move(member), e.id, role);
                return;
            }
            case ExprKind::Index:
                access(e.children[0], role, member);
                expression(e.children[1]);
                return;
            case ExprKind::MemberAccess:
                access(e.children[0], role, e.text);
                return;
            default:
                expression(e);
                return;
        }
    }

    const SyntaxTree& tree_;
    const ScopeTree& scopes_;
    ScopeTree* build_;
    bool resolving_;
    std::vector<Frame> stack_;
    std::map<std::string, const RecordDef*> records_;
    std::set<std::string, std::less<>> functions_;
    std::set<std::string, std::less<>> labels_;
    std::vector<OccurrenceRef> out_;
    NodeId anchor_ = 0;
    NodeId context_ = 0;
    std::string function_name_;
};

}  // namespace

ScopeTree build_scope_tree(const SyntaxTree& tree) {
    ScopeTree scopes;
    Walker(tree, scopes, &scopes).run();
    return scopes;
}

std::vector<OccurrenceRef> resolve_occurrences(const SyntaxTree& tree, const ScopeTree& scopes) {
    return Walker(tree, scopes, nullptr).run();
}

}  // namespace escim
