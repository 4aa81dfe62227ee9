#include "escim/bcs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

namespace escim {

std::string_view to_string(BcsKind kind) {
    switch (kind) {
        case BcsKind::Linear: return "linear";
        case BcsKind::Goto: return "goto";
        case BcsKind::IfBranch: return "if";
        case BcsKind::CaseBranch: return "case";
        case BcsKind::WhileLoop: return "while";
        case BcsKind::DoWhileLoop: return "do_while";
        case BcsKind::ForLoop: return "for";
        case BcsKind::FunctionCall: return "call";
        case BcsKind::Recursion: return "recursion";
    }
    return "?";
}

std::optional<BcsKind> parse_bcs_kind(std::string_view text) {
    for (BcsKind k : kAllBcsKinds)
        if (to_string(k) == text) return k;
    return std::nullopt;
}

BcsKind classify_bcs(const Stmt& stmt) {
    switch (stmt.kind) {
        case StmtKind::If: return BcsKind::IfBranch;
        case StmtKind::Switch: return BcsKind::CaseBranch;
        case StmtKind::While: return BcsKind::WhileLoop;
        case StmtKind::DoWhile: return BcsKind::DoWhileLoop;
        case StmtKind::For: return BcsKind::ForLoop;
        case StmtKind::Goto: return BcsKind::Goto;
        case StmtKind::Labeled: return classify_bcs(stmt.body[0]);
        default: return BcsKind::Linear;
    }
}

std::string format_label(const std::vector<int>& path) {
    if (path.size() == 1) return "G" + std::to_string(path[0]);
    std::string out = "G(";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(path[i]);
    }
    return out + ')';
}

std::string Granule::label() const { return format_label(path); }

namespace {

unsigned user_calls(const Expr& e) {
    unsigned n = 0;
    for_each_expr(e, [&](const Expr& x) {
        if (x.kind == ExprKind::Call && !is_builtin_function(x.text)) ++n;
    });
    return n;
}

// Calls in a structured statement's header only, not its body.
unsigned header_calls(const Stmt& s) {
    unsigned n = 0;
    if (s.expr) n += user_calls(*s.expr);
    if (s.update) n += user_calls(*s.update);
    for (const Stmt& init : s.init) {
        if (init.expr) n += user_calls(*init.expr);
        for (const Expr& e : init.init_list) n += user_calls(e);
    }
    return n;
}

class Decomposer {
public:
    std::vector<Granule> function_body(const Stmt& body) {
        std::vector<Granule> out;
        arm(body.body, out);
        return out;
    }

private:
    // Append the granules of one statement list; each structured statement
    // closes the current run of simple statements.
    void arm(const std::vector<Stmt>& stmts, std::vector<Granule>& out) {
        Granule* run = nullptr;
        std::function<void(const Stmt&)> add = [&](const Stmt& s) {
            switch (s.kind) {
                case StmtKind::Block:
                    for (const Stmt& c : s.body) add(c);
                    return;
                case StmtKind::Labeled:
                    add(s.body[0]);
                    return;
                default:
                    break;
            }
            if (s.is_structured()) {
                out.push_back(structured(s));
                run = nullptr;
                return;
            }
            if (!run) {
                out.emplace_back();
                run = &out.back();
            }
            run->stmts.push_back(s.id);
            run->anchors.push_back(s.id);
            for_each_expr(s, [&](const Expr& x) {
                if (x.kind == ExprKind::Call && !is_builtin_function(x.text)) ++run->calls;
            });
            if (s.kind == StmtKind::Goto) ++run->gotos;
        };
        for (const Stmt& s : stmts) add(s);
    }

    Granule structured(const Stmt& s) {
        Granule g;
        g.kind = classify_bcs(s);
        g.node = s.id;
        std::vector<std::vector<Granule>> arms;
        auto take = [&](const std::vector<Stmt>& stmts) {
            std::vector<Granule> a;
            arm(stmts, a);
            if (a.empty()) a.emplace_back();
            arms.push_back(std::move(a));
        };
        switch (s.kind) {
            case StmtKind::If:
                for (const Stmt& branch : s.body) take({branch});
                break;
            case StmtKind::Switch:
                for (const SwitchArm& a : s.arms) take(a.body);
                if (arms.empty()) arms.push_back({Granule{}});
                break;
            default:
                take({s.body[0]});
                break;
        }
        Granule* host;
        if (s.kind == StmtKind::DoWhile) {
            if (!arms.back().back().is_leaf()) arms.back().emplace_back();
            host = &arms.back().back();
        } else {
            if (!arms.front().front().is_leaf()) arms.front().insert(arms.front().begin(), Granule{});
            host = &arms.front().front();
        }
        host->anchors.push_back(s.id);
        host->calls += header_calls(s);
        for (auto& a : arms) {
            for (std::size_t i = 0; i + 1 < a.size(); ++i)
                a[i].relation_to_next = SiblingRelation::Sequence;
            for (Granule& c : a) g.children.push_back(std::move(c));
        }
        return g;
    }
};

void assign_paths(std::vector<Granule>& siblings, const std::vector<int>& prefix) {
    for (std::size_t i = 0; i < siblings.size(); ++i) {
        siblings[i].path = prefix;
        siblings[i].path.push_back(static_cast<int>(i + 1));
        assign_paths(siblings[i].children, siblings[i].path);
    }
}

}  // namespace

GranuleTree decompose(const SyntaxTree& tree) {
    const std::set<std::string> recursive = detect_recursion(tree);
    GranuleTree out;
    for (const FunctionDef* fn : tree.functions()) {
        FunctionGranules f;
        f.name = fn->name;
        f.function = fn->id;
        f.recursive = recursive.contains(fn->name);
        f.roots = Decomposer{}.function_body(fn->body);
        for (std::size_t i = 0; i + 1 < f.roots.size(); ++i)
            f.roots[i].relation_to_next = SiblingRelation::Sequence;
        assign_paths(f.roots, {});
        out.functions.push_back(std::move(f));
    }
    return out;
}

std::set<std::string> detect_recursion(const SyntaxTree& tree) {
    const std::vector<const FunctionDef*> fns = tree.functions();
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < fns.size(); ++i) index_of.emplace(fns[i]->name, i);

    std::vector<std::vector<std::size_t>> edges(fns.size());
    std::vector<bool> self_call(fns.size(), false);
    for (std::size_t i = 0; i < fns.size(); ++i) {
        for_each_expr(fns[i]->body, [&](const Expr& e) {
            if (e.kind != ExprKind::Call) return;
            auto it = index_of.find(e.text);
            if (it == index_of.end()) return;
            edges[i].push_back(it->second);
            if (it->second == i) self_call[i] = true;
        });
    }

    // Tarjan's strongly connected components.
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(fns.size(), kUnvisited), low(fns.size(), 0);
    std::vector<bool> on_stack(fns.size(), false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    std::set<std::string> out;

    std::function<void(std::size_t)> connect = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : edges[v]) {
            if (index[w] == kUnvisited) {
                connect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] != index[v]) return;
        std::vector<std::size_t> component;
        std::size_t w;
        do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component.push_back(w);
        } while (w != v);
        if (component.size() > 1 || self_call[v])
            for (std::size_t c : component) out.insert(fns[c]->name);
    };
    for (std::size_t v = 0; v < fns.size(); ++v)
        if (index[v] == kUnvisited) connect(v);
    return out;
}

namespace {

void emit(const std::vector<Granule>& siblings, ErmExpression& out) {
    for (std::size_t i = 0; i + 1 < siblings.size(); ++i)
        if (siblings[i].relation_to_next == SiblingRelation::Sequence)
            out.push_back({siblings[i].label(), ErmRelation::Sequence, siblings[i + 1].label()});
    for (const Granule& g : siblings) {
        for (const Granule& c : g.children)
            out.push_back({g.label(), ErmRelation::Include, c.label()});
        emit(g.children, out);
    }
}

}  // namespace

ErmExpression serialize_erm(const std::vector<Granule>& roots) {
    ErmExpression out;
    emit(roots, out);
    return out;
}

ErmExpression serialize_erm(const FunctionGranules& function) { return serialize_erm(function.roots); }

std::string render_fact(const ErmFact& fact) {
    return fact.left + (fact.rel == ErmRelation::Sequence ? " -> " : " > ") + fact.right;
}

std::string render_erm(const ErmExpression& erm) {
    std::string out;
    for (const ErmFact& f : erm) out += render_fact(f) + '\n';
    return out;
}

ErmExpression parse_erm(std::string_view text) {
    static const std::regex fact(
        R"(\s*(G[0-9]+|G\([0-9]+(?:,[0-9]+)+\))\s*(->|>)\s*(G[0-9]+|G\([0-9]+(?:,[0-9]+)+\))\s*)");
    ErmExpression out;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::smatch m;
        if (!std::regex_match(line, m, fact))
            throw ErmSyntaxError("line " + std::to_string(number) + ": malformed fact '" + line + "'");
        out.push_back({m[1], m[2] == "->" ? ErmRelation::Sequence : ErmRelation::Include, m[3]});
    }
    return out;
}

}  // namespace escim
