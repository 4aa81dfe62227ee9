#include "escim/ast.hpp"

namespace escim {

bool Expr::is_operator() const {
    switch (kind) {
        case ExprKind::UnaryOp:
        case ExprKind::BinaryOp:
        case ExprKind::Assignment:
        case ExprKind::CompoundAssignment:
        case ExprKind::Increment:
        case ExprKind::Decrement:
            return true;
        default:
            return false;
    }
}

bool Expr::is_lvalue() const {
    return kind == ExprKind::VariableRef || kind == ExprKind::GlobalRef ||
           kind == ExprKind::Index || kind == ExprKind::MemberAccess;
}

std::string TypeName::to_string() const {
    std::string out = base;
    if (is_array) {
        out += '[';
        if (array_size) out += std::to_string(*array_size);
        out += ']';
    }
    return out;
}

std::string_view to_string(StmtKind kind) {
    switch (kind) {
        case StmtKind::Declaration: return "declaration";
        case StmtKind::Expression: return "expression";
        case StmtKind::If: return "if";
        case StmtKind::Switch: return "switch";
        case StmtKind::While: return "while";
        case StmtKind::DoWhile: return "do_while";
        case StmtKind::For: return "for";
        case StmtKind::Return: return "return";
        case StmtKind::Break: return "break";
        case StmtKind::Continue: return "continue";
        case StmtKind::Goto: return "goto";
        case StmtKind::Labeled: return "labeled";
        case StmtKind::Block: return "block";
        case StmtKind::Empty: return "empty";
    }
    return "?";
}

bool Stmt::is_structured() const {
    switch (kind) {
        case StmtKind::If:
        case StmtKind::Switch:
        case StmtKind::While:
        case StmtKind::DoWhile:
        case StmtKind::For:
            return true;
        default:
            return false;
    }
}

const FunctionDef* SyntaxTree::find_function(std::string_view name) const {
    for (const Item& item : items)
        if (const auto* f = std::get_if<FunctionDef>(&item); f && f->name == name) return f;
    return nullptr;
}

FunctionDef* SyntaxTree::find_function(std::string_view name) {
    for (Item& item : items)
        if (auto* f = std::get_if<FunctionDef>(&item); f && f->name == name) return f;
    return nullptr;
}

std::vector<const FunctionDef*> SyntaxTree::functions() const {
    std::vector<const FunctionDef*> out;
    for (const Item& item : items)
        if (const auto* f = std::get_if<FunctionDef>(&item)) out.push_back(f);
    return out;
}

namespace {

template <typename T, typename Eq>
bool all_equal(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq(a[i], b[i])) return false;
    return true;
}

bool opt_equal(const std::optional<Expr>& a, const std::optional<Expr>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || structurally_equal(*a, *b);
}

bool expr_eq(const Expr& a, const Expr& b) { return structurally_equal(a, b); }
bool stmt_eq(const Stmt& a, const Stmt& b) { return structurally_equal(a, b); }

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.text == b.text && a.op == b.op &&
           (a.kind != ExprKind::Literal || a.literal == b.literal) &&
           all_equal(a.children, b.children, expr_eq);
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.name != b.name || !opt_equal(a.expr, b.expr) ||
        !opt_equal(a.update, b.update) || a.has_init_list != b.has_init_list ||
        !all_equal(a.init_list, b.init_list, expr_eq) || !all_equal(a.init, b.init, stmt_eq) ||
        !all_equal(a.body, b.body, stmt_eq))
        return false;
    if (a.kind == StmtKind::Declaration && !(a.type == b.type)) return false;
    return all_equal(a.arms, b.arms, [](const SwitchArm& x, const SwitchArm& y) {
        return opt_equal(x.label, y.label) && all_equal(x.body, y.body, stmt_eq);
    });
}

bool structurally_equal(const SyntaxTree& a, const SyntaxTree& b) {
    return all_equal(a.items, b.items, [](const Item& x, const Item& y) {
        if (x.index() != y.index()) return false;
        if (const auto* r = std::get_if<RecordDef>(&x)) {
            const auto& s = std::get<RecordDef>(y);
            return r->name == s.name &&
                   all_equal(r->fields, s.fields, [](const Field& f, const Field& g) {
                       return f.name == g.name && f.type == g.type;
                   });
        }
        if (const auto* f = std::get_if<FunctionDef>(&x)) {
            const auto& g = std::get<FunctionDef>(y);
            return f->name == g.name && f->return_type == g.return_type &&
                   all_equal(f->params, g.params,
                             [](const Param& p, const Param& q) {
                                 return p.name == q.name && p.type == q.type;
                             }) &&
                   structurally_equal(f->body, g.body);
        }
        return structurally_equal(std::get<Stmt>(x), std::get<Stmt>(y));
    });
}

void for_each_stmt(const Stmt& root, const std::function<void(const Stmt&)>& fn) {
    fn(root);
    for (const Stmt& s : root.init) for_each_stmt(s, fn);
    for (const Stmt& s : root.body) for_each_stmt(s, fn);
    for (const SwitchArm& arm : root.arms)
        for (const Stmt& s : arm.body) for_each_stmt(s, fn);
}

void for_each_expr(const Expr& root, const std::function<void(const Expr&)>& fn) {
    fn(root);
    for (const Expr& c : root.children) for_each_expr(c, fn);
}

void for_each_expr(const Stmt& root, const std::function<void(const Expr&)>& fn) {
    for_each_stmt(root, [&](const Stmt& s) {
        if (s.expr) for_each_expr(*s.expr, fn);
        for (const Expr& e : s.init_list) for_each_expr(e, fn);
        if (s.update) for_each_expr(*s.update, fn);
        for (const SwitchArm& arm : s.arms)
            if (arm.label) for_each_expr(*arm.label, fn);
    });
}

void for_each_stmt_mut(Stmt& root, const std::function<void(Stmt&)>& fn) {
    fn(root);
    for (Stmt& s : root.init) for_each_stmt_mut(s, fn);
    for (Stmt& s : root.body) for_each_stmt_mut(s, fn);
    for (SwitchArm& arm : root.arms)
        for (Stmt& s : arm.body) for_each_stmt_mut(s, fn);
}

void for_each_expr_mut(Expr& root, const std::function<void(Expr&)>& fn) {
    fn(root);
    for (Expr& c : root.children) for_each_expr_mut(c, fn);
}

void for_each_expr_mut(Stmt& root, const std::function<void(Expr&)>& fn) {
    for_each_stmt_mut(root, [&](Stmt& s) {
        if (s.expr) for_each_expr_mut(*s.expr, fn);
        for (Expr& e : s.init_list) for_each_expr_mut(e, fn);
        if (s.update) for_each_expr_mut(*s.update, fn);
    });
}

namespace {

struct Numberer {
    NodeId next = 1;

    void expr(Expr& e) {
        e.id = next++;
        for (Expr& c : e.children) expr(c);
    }

    void stmt(Stmt& s) {
        s.id = next++;
        for (Stmt& c : s.init) stmt(c);
        if (s.kind == StmtKind::DoWhile) {
            for (Stmt& c : s.body) stmt(c);
            if (s.expr) expr(*s.expr);
            return;
        }
        if (s.expr) expr(*s.expr);
        for (Expr& e : s.init_list) expr(e);
        if (s.update) expr(*s.update);
        for (Stmt& c : s.body) stmt(c);
        for (SwitchArm& arm : s.arms) {
            arm.id = next++;
            if (arm.label) expr(*arm.label);
            for (Stmt& c : arm.body) stmt(c);
        }
    }
};

}  // namespace

void renumber(SyntaxTree& tree) {
    Numberer n;
    for (Item& item : tree.items) {
        if (auto* r = std::get_if<RecordDef>(&item)) {
            r->id = n.next++;
        } else if (auto* f = std::get_if<FunctionDef>(&item)) {
            f->id = n.next++;
            for (Param& p : f->params) p.id = n.next++;
            n.stmt(f->body);
        } else {
            n.stmt(std::get<Stmt>(item));
        }
    }
    tree.next_id = n.next;
}

unsigned count_operators(const Expr& e) {
    unsigned n = 0;
    for_each_expr(e, [&](const Expr& x) {
        if (x.is_operator() && x.kind != ExprKind::Assignment) ++n;
    });
    return n;
}

}  // namespace escim
