#include "escim/weyuker.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "escim/generator.hpp"
#include "escim/lexer.hpp"
#include "escim/parser.hpp"

namespace escim {

namespace {

const FunctionDef* entry_of(const SyntaxTree& t) { return t.find_function("main"); }

Expr literal_bool(bool value, const SourceSpan& span) {
    Expr e;
    e.kind = ExprKind::Literal;
    e.literal = LiteralKind::Bool;
    e.text = value ? "true" : "false";
    e.span = span;
    return e;
}

Expr variable_ref(const std::string& name, const SourceSpan& span) {
    Expr e;
    e.kind = ExprKind::VariableRef;
    e.text = name;
    e.span = span;
    return e;
}

Stmt expression_stmt(Expr e) {
    Stmt s;
    s.kind = StmtKind::Expression;
    s.span = e.span;
    s.expr = std::move(e);
    return s;
}

Stmt block_of(std::vector<Stmt> stmts, const SourceSpan& span) {
    Stmt b;
    b.kind = StmtKind::Block;
    b.span = span;
    b.body = std::move(stmts);
    return b;
}

std::string item_name(const Item& item) {
    if (const auto* r = std::get_if<RecordDef>(&item)) return r->name;
    if (const auto* f = std::get_if<FunctionDef>(&item)) return f->name;
    return std::get<Stmt>(item).name;
}

bool items_equal(const Item& a, const Item& b) {
    SyntaxTree x, y;
    x.items.push_back(a);
    y.items.push_back(b);
    return structurally_equal(x, y);
}

// Every identifier spelled anywhere in the tree, so fresh names avoid them.
std::set<std::string> spelled_names(const SyntaxTree& t) {
    std::set<std::string> names;
    for (const Item& item : t.items) {
        names.insert(item_name(item));
        auto stmt_names = [&](const Stmt& root) {
            for_each_stmt(root, [&](const Stmt& s) {
                if (!s.name.empty()) names.insert(s.name);
            });
            for_each_expr(root, [&](const Expr& e) {
                if (!e.text.empty()) names.insert(e.text);
            });
        };
        if (const auto* f = std::get_if<FunctionDef>(&item)) {
            for (const Param& p : f->params) names.insert(p.name);
            stmt_names(f->body);
        } else if (const auto* s = std::get_if<Stmt>(&item)) {
            stmt_names(*s);
        }
    }
    return names;
}

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (taken.insert(candidate).second) return candidate;
    }
}

void rename_callee(SyntaxTree& t, const std::string& from, const std::string& to) {
    for (Item& item : t.items) {
        auto fix = [&](Stmt& root) {
            for_each_expr_mut(root, [&](Expr& e) {
                if (e.kind == ExprKind::Call && e.text == from) e.text = to;
            });
        };
        if (auto* f = std::get_if<FunctionDef>(&item)) {
            if (f->name == from) f->name = to;
            fix(f->body);
        } else if (auto* s = std::get_if<Stmt>(&item)) {
            fix(*s);
        }
    }
}

void rename_record_type(SyntaxTree& t, const std::string& from, const std::string& to) {
    auto fix_type = [&](TypeName& type) {
        if (type.base == from) type.base = to;
    };
    for (Item& item : t.items) {
        if (auto* r = std::get_if<RecordDef>(&item)) {
            if (r->name == from) r->name = to;
            for (Field& f : r->fields) fix_type(f.type);
        } else if (auto* f = std::get_if<FunctionDef>(&item)) {
            fix_type(f->return_type);
            for (Param& p : f->params) fix_type(p.type);
            for_each_stmt_mut(f->body, [&](Stmt& s) {
                if (s.kind == StmtKind::Declaration) fix_type(s.type);
            });
        } else {
            fix_type(std::get<Stmt>(item).type);
        }
    }
}

std::set<std::string> labels_of(const FunctionDef& fn) {
    std::set<std::string> out;
    for_each_stmt(fn.body, [&](const Stmt& s) {
        if (s.kind == StmtKind::Labeled) out.insert(s.name);
    });
    return out;
}

}  // namespace

SyntaxTree compose(const SyntaxTree& p, const SyntaxTree& q_in, ComposePolicy policy, ComposeInfo* info) {
    ComposeInfo scratch;
    ComposeInfo& ci = info ? *info : scratch;
    ci = ComposeInfo{};

    const FunctionDef* pm = entry_of(p);
    if ((pm && !pm->params.empty()) || (entry_of(q_in) && !entry_of(q_in)->params.empty()))
        throw ComposeError("main must not take parameters");

    SyntaxTree q = q_in;
    std::set<std::string> taken = spelled_names(p);
    for (const std::string& n : spelled_names(q)) taken.insert(n);

    // Functions and records: identical ones are shared, conflicting ones in Q
    // renamed. A global Q redeclares is dropped and its initializer moves to
    // the start of Q's part of main.
    std::vector<Stmt> global_inits;
    for (const Item& qi : q_in.items) {
        const bool is_fn = std::holds_alternative<FunctionDef>(qi);
        const bool is_rec = std::holds_alternative<RecordDef>(qi);
        const std::string name = item_name(qi);
        if (name == "main" && is_fn) continue;
        for (const Item& pi : p.items) {
            if (pi.index() != qi.index() || item_name(pi) != name) continue;
            if (const auto* qs = std::get_if<Stmt>(&qi)) {
                const Stmt& ps = std::get<Stmt>(pi);
                if (!(ps.type == qs->type))
                    throw ComposeError("global '" + name + "' is declared as " + ps.type.to_string() + " and " +
                                       qs->type.to_string());
                if (qs->has_init_list)
                    throw ComposeError("cannot unify global '" + name + "': aggregate initializer");
                if (qs->expr) {
                    Expr target;
                    target.kind = ExprKind::GlobalRef;
                    target.text = name;
                    target.span = qs->span;
                    Expr assign;
                    assign.kind = ExprKind::Assignment;
                    assign.op = "=";
                    assign.span = qs->span;
                    assign.children.push_back(std::move(target));
                    assign.children.push_back(*qs->expr);
                    global_inits.push_back(expression_stmt(std::move(assign)));
                }
                ci.unified_variables.push_back("::" + name);
            } else if (items_equal(pi, qi)) {
                ci.shared_items.push_back(name);
                if (is_fn) ci.deduplicated_function = true;
            } else if (is_fn) {
                const std::string to = fresh_name(name, taken);
                rename_callee(q, name, to);
                ci.renamed_items.push_back(name + "->" + to);
            } else if (is_rec) {
                const std::string to = fresh_name(name, taken);
                rename_record_type(q, name, to);
                ci.renamed_items.push_back(name + "->" + to);
            }
        }
    }

    FunctionDef* qm = q.find_function("main");
    std::vector<Stmt> merged_body;
    if (pm) merged_body = pm->body.body;
    if (qm) {
        merged_body.insert(merged_body.end(), std::make_move_iterator(global_inits.begin()),
                           std::make_move_iterator(global_inits.end()));
        // Goto labels are function-wide.
        if (pm) {
            const std::set<std::string> p_labels = labels_of(*pm);
            for (const std::string& label : labels_of(*qm)) {
                if (!p_labels.contains(label)) continue;
                const std::string to = fresh_name(label, taken);
                for_each_stmt_mut(qm->body, [&](Stmt& s) {
                    if ((s.kind == StmtKind::Labeled || s.kind == StmtKind::Goto) && s.name == label)
                        s.name = to;
                });
                ci.renamed_labels.push_back(label + "->" + to);
            }
        }

        std::map<std::string, const Stmt*> p_decls;
        if (pm)
            for (const Stmt& s : pm->body.body)
                if (s.kind == StmtKind::Declaration) p_decls.emplace(s.name, &s);

        if (policy == ComposePolicy::FreshRename) {
            // Rename each clashing top-level local of Q together with the
            // occurrences bound to it.
            const ScopeTree scopes = build_scope_tree(q);
            const std::vector<OccurrenceRef> occ = resolve_occurrences(q, scopes);
            for (const Stmt& s : qm->body.body) {
                if (s.kind != StmtKind::Declaration || !p_decls.contains(s.name)) continue;
                const VarId var = scopes.variable_of_decl.at(s.id);
                std::set<NodeId> nodes;
                for (const OccurrenceRef& o : occ)
                    if (o.variable == var) nodes.insert(o.node);
                const std::string to = fresh_name(s.name, taken);
                for_each_stmt_mut(qm->body, [&](Stmt& st) {
                    if (st.kind == StmtKind::Declaration && nodes.contains(st.id)) st.name = to;
                });
                for_each_expr_mut(qm->body, [&](Expr& e) {
                    if ((e.kind == ExprKind::VariableRef) && nodes.contains(e.id)) e.text = to;
                });
                ci.renamed_variables.push_back(s.name + "->" + to);
            }
            for (Stmt& s : qm->body.body) merged_body.push_back(std::move(s));
        } else {
            for (Stmt& s : qm->body.body) {
                auto dup = s.kind == StmtKind::Declaration ? p_decls.find(s.name) : p_decls.end();
                if (dup == p_decls.end()) {
                    merged_body.push_back(std::move(s));
                    continue;
                }
                if (!(dup->second->type == s.type))
                    throw ComposeError("'" + s.name + "' is declared as " + dup->second->type.to_string() +
                                       " and " + s.type.to_string());
                if (s.has_init_list)
                    throw ComposeError("cannot unify '" + s.name + "': aggregate initializer");
                // Keep an occurrence where the declaration stood.
                merged_body.push_back(expression_stmt(variable_ref(s.name, s.span)));
                if (s.expr) {
                    Expr assign;
                    assign.kind = ExprKind::Assignment;
                    assign.op = "=";
                    assign.span = s.span;
                    assign.children.push_back(variable_ref(s.name, s.span));
                    assign.children.push_back(std::move(*s.expr));
                    merged_body.push_back(expression_stmt(std::move(assign)));
                }
                ci.unified_variables.push_back(s.name);
            }
        }
    }

    auto split = [](const SyntaxTree& t, std::vector<Item>& before, std::vector<Item>& after) {
        bool seen_main = false;
        for (const Item& item : t.items) {
            if (const auto* f = std::get_if<FunctionDef>(&item); f && f->name == "main") {
                seen_main = true;
                continue;
            }
            (seen_main ? after : before).push_back(item);
        }
    };
    std::vector<Item> p_before, p_after, q_before, q_after;
    split(p, p_before, p_after);
    split(q, q_before, q_after);

    std::vector<Item> items;
    for (auto* part : {&p_before, &q_before}) items.insert(items.end(), part->begin(), part->end());
    if (pm || qm) {
        FunctionDef main = pm ? *pm : *qm;
        main.body.body = std::move(merged_body);
        items.emplace_back(std::move(main));
    }
    for (auto* part : {&p_after, &q_after}) items.insert(items.end(), part->begin(), part->end());

    // Shared items are kept at their first position.
    SyntaxTree out;
    out.file = p.file + ";" + q.file;
    for (Item& item : items) {
        bool duplicate = false;
        for (const Item& kept : out.items)
            if (kept.index() == item.index() && item_name(kept) == item_name(item)) duplicate = true;
        if (!duplicate) out.items.push_back(std::move(item));
    }
    renumber(out);
    return out;
}

SyntaxTree rename(const SyntaxTree& p, const std::map<std::string, std::string>& mapping) {
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    for (const auto& [from, to] : mapping) {
        if (!std::regex_match(to, ident) || is_keyword(to))
            throw RenameCollision("'" + to + "' is not a usable identifier");
    }
    auto map = [&](std::string& name) {
        auto it = mapping.find(name);
        if (it != mapping.end()) name = it->second;
    };

    SyntaxTree out = p;
    for (Item& item : out.items) {
        auto fix = [&](Stmt& root) {
            for_each_stmt_mut(root, [&](Stmt& s) {
                if (s.kind == StmtKind::Declaration) map(s.name);
            });
            for_each_expr_mut(root, [&](Expr& e) {
                if (e.kind == ExprKind::VariableRef || e.kind == ExprKind::GlobalRef) map(e.text);
            });
        };
        if (auto* f = std::get_if<FunctionDef>(&item)) {
            for (Param& param : f->params) map(param.name);
            fix(f->body);
        } else if (auto* s = std::get_if<Stmt>(&item)) {
            fix(*s);
        }
    }

    const ScopeTree before_scopes = build_scope_tree(p);
    const std::vector<OccurrenceRef> before = resolve_occurrences(p, before_scopes);
    std::vector<OccurrenceRef> after;
    ScopeTree after_scopes;
    try {
        after_scopes = build_scope_tree(out);
        after = resolve_occurrences(out, after_scopes);
    } catch (const Error& e) {
        throw RenameCollision(std::string("renaming breaks resolution: ") + e.what());
    }
    bool same = before.size() == after.size();
    for (std::size_t i = 0; same && i < before.size(); ++i)
        same = before[i].node == after[i].node &&
               before_scopes.variable(before[i].variable).decl_node ==
                   after_scopes.variable(after[i].variable).decl_node;
    if (!same) throw RenameCollision("renaming changes which declaration a name refers to");
    return out;
}

SyntaxTree permute(const SyntaxTree& p, const std::vector<std::size_t>& order) {
    SyntaxTree out = p;
    FunctionDef* main = out.find_function("main");
    if (!main) throw InvalidPermutation("program has no main");
    std::vector<Stmt>& body = main->body.body;
    std::vector<bool> used(body.size(), false);
    if (order.size() != body.size()) throw InvalidPermutation("order has the wrong length");
    for (std::size_t i : order) {
        if (i >= body.size() || used[i]) throw InvalidPermutation("order is not a permutation");
        used[i] = true;
    }
    std::vector<Stmt> reordered;
    reordered.reserve(body.size());
    for (std::size_t i : order) reordered.push_back(body[i]);
    body = std::move(reordered);
    renumber(out);
    try {
        resolve_occurrences(out, build_scope_tree(out));
    } catch (const Error& e) {
        throw InvalidPermutation(std::string("permuted program does not resolve: ") + e.what());
    }
    return out;
}

SyntaxTree wrap_in_loop(const SyntaxTree& p, std::size_t first, std::size_t last, LoopWrap kind) {
    SyntaxTree out = p;
    FunctionDef* main = out.find_function("main");
    if (!main || first >= last || last > main->body.body.size())
        throw InvalidPermutation("no such statement range in main");
    std::vector<Stmt>& body = main->body.body;
    const SourceSpan span = cover(body[first].span, body[last - 1].span);
    std::vector<Stmt> inner(std::make_move_iterator(body.begin() + static_cast<std::ptrdiff_t>(first)),
                            std::make_move_iterator(body.begin() + static_cast<std::ptrdiff_t>(last)));
    Stmt loop;
    loop.span = span;
    switch (kind) {
        case LoopWrap::While:
            loop.kind = StmtKind::While;
            loop.expr = literal_bool(true, span);
            break;
        case LoopWrap::For:
            loop.kind = StmtKind::For;
            break;
        case LoopWrap::DoWhile:
            loop.kind = StmtKind::DoWhile;
            loop.expr = literal_bool(false, span);
            break;
    }
    loop.body.push_back(block_of(std::move(inner), span));
    body.erase(body.begin() + static_cast<std::ptrdiff_t>(first), body.begin() + static_cast<std::ptrdiff_t>(last));
    body.insert(body.begin() + static_cast<std::ptrdiff_t>(first), std::move(loop));
    renumber(out);
    return out;
}

SyntaxTree wrap_in_if_true(const SyntaxTree& p, std::size_t first) {
    SyntaxTree out = p;
    FunctionDef* main = out.find_function("main");
    if (!main || first >= main->body.body.size()) throw InvalidPermutation("no such statement in main");
    std::vector<Stmt>& body = main->body.body;
    const SourceSpan span = cover(body[first].span, body.back().span);
    std::vector<Stmt> inner(std::make_move_iterator(body.begin() + static_cast<std::ptrdiff_t>(first)),
                            std::make_move_iterator(body.end()));
    body.erase(body.begin() + static_cast<std::ptrdiff_t>(first), body.end());
    Stmt branch;
    branch.kind = StmtKind::If;
    branch.span = span;
    branch.expr = literal_bool(true, span);
    branch.body.push_back(block_of(std::move(inner), span));
    body.push_back(std::move(branch));
    renumber(out);
    return out;
}

std::optional<SyntaxTree> swap_plus_minus(const SyntaxTree& p) {
    SyntaxTree out = p;
    bool done = false;
    auto swap = [&](Expr& e) {
        if (!done && e.kind == ExprKind::BinaryOp && e.op == "+") {
            e.op = "-";
            done = true;
        }
    };
    for (Item& item : out.items) {
        if (auto* f = std::get_if<FunctionDef>(&item)) for_each_expr_mut(f->body, swap);
        else if (auto* s = std::get_if<Stmt>(&item)) for_each_expr_mut(*s, swap);
    }
    if (!done) return std::nullopt;
    return out;
}

// ---- corpus and sample -------------------------------------------------------

Corpus load_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    Corpus corpus;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mc") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& path : files) {
        std::ifstream in(path);
        std::ostringstream buf;
        buf << in.rdbuf();
        corpus.programs.push_back({path.filename().string(), parse_source(buf.str(), path.filename().string())});
    }
    const fs::path manifest = fs::path(dir) / "manifest.json";
    if (fs::exists(manifest)) {
        std::ifstream in(manifest);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("manifest.json: ") + e.what());
        }
        for (const auto& pair : doc.value("equivalent_pairs", nlohmann::json::array()))
            corpus.equivalent.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    }
    return corpus;
}

Sample::Sample(const Corpus& corpus, std::uint64_t seed, std::size_t generated, const WeightTable& weights)
    : corpus_(corpus), seed_(seed), weights_(weights) {
    programs_ = corpus.programs;
    for (std::size_t i = 0; i < generated; ++i)
        programs_.push_back({"gen:" + std::to_string(seed + i), generate_program(seed + i)});
    for (const Program& prog : programs_) analyses_.push_back(analyze_tree(prog.tree));
}

std::uint64_t Sample::escim(std::size_t i, SiMode mode) const {
    return make_report(analyses_[i], weights_, mode).escim;
}

std::uint64_t escim_of(const SyntaxTree& tree, SiMode mode, const WeightTable& weights) {
    return make_report(analyze_tree(tree), weights, mode).escim;
}

std::string_view to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::Witnessed: return "witnessed";
        case VerdictStatus::HoldsOnSample: return "holds-on-sample";
        case VerdictStatus::NoWitnessFound: return "no-witness-found";
        case VerdictStatus::Refuted: return "refuted";
    }
    return "?";
}

const std::vector<std::string>& property_ids() {
    static const std::vector<std::string> ids{"1", "2", "3", "4", "5", "6a", "6b", "7", "8", "9"};
    return ids;
}

const PropertyVerdict* VerdictTable::find(const std::string& id, SiMode mode) const {
    for (const PropertyVerdict& v : verdicts)
        if (v.id == id && v.mode == mode) return &v;
    return nullptr;
}

namespace {

// Deterministic pair schedule over a sample of n programs: each program with
// its successor and with a pseudo-random partner.
std::vector<std::pair<std::size_t, std::size_t>> pair_schedule(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n < 2) return out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(i, (i + 1) % n);
        const std::size_t j = (i * 31 + 17) % n;
        if (j != i) out.emplace_back(i, j);
    }
    return out;
}

class Checker {
public:
    Checker(SiMode mode, const Sample& sample) : mode_(mode), s_(sample) {
        values_.reserve(s_.size());
        for (std::size_t i = 0; i < s_.size(); ++i) values_.push_back(s_.escim(i, mode));
    }

    PropertyVerdict run(const std::string& id) {
        PropertyVerdict v;
        v.id = id;
        v.mode = mode_;
        if (id == "1") p1(v);
        else if (id == "2") p2(v);
        else if (id == "3") p3(v);
        else if (id == "4") p4(v);
        else if (id == "5") p5(v);
        else if (id == "6a") p6(v, false);
        else if (id == "6b") p6(v, true);
        else if (id == "7") p7(v);
        else if (id == "8") p8(v);
        else if (id == "9") p9(v);
        else throw ConfigError("unknown property '" + id + "'");
        return v;
    }

private:
    std::uint64_t value(const SyntaxTree& t) const { return escim_of(t, mode_, s_.weights()); }
    const std::string& name(std::size_t i) const { return s_.program(i).name; }
    std::string text(std::size_t i) const { return pretty_print(s_.program(i).tree); }

    void witness(PropertyVerdict& v, std::vector<std::string> names, std::vector<std::string> programs,
                 std::vector<std::uint64_t> values) {
        v.status = VerdictStatus::Witnessed;
        v.witness = std::move(names);
        v.witness_programs = std::move(programs);
        v.values = std::move(values);
    }

    std::optional<SyntaxTree> try_compose(const SyntaxTree& a, const SyntaxTree& b, ComposeInfo* info = nullptr) {
        try {
            return compose(a, b, ComposePolicy::Unify, info);
        } catch (const ComposeError&) {
            ++skipped_;
            return std::nullopt;
        }
    }

    void p1(PropertyVerdict& v) {
        for (std::size_t i = 0; i < s_.size(); ++i)
            for (std::size_t j = i + 1; j < s_.size(); ++j) {
                ++v.checked;
                if (values_[i] != values_[j]) {
                    witness(v, {name(i), name(j)}, {text(i), text(j)}, {values_[i], values_[j]});
                    return;
                }
            }
    }

    void p2(PropertyVerdict& v) {
        // ESCIM is an unsigned count, so the listed form cannot fail; each
        // value is still recomputed and counted.
        v.status = VerdictStatus::HoldsOnSample;
        v.checked = s_.size();
        v.note = "checked as listed, ESCIM >= 0; Weyuker's original property 2 (finitely many "
                 "programs per complexity value) is not machine-checkable";
    }

    void p3(PropertyVerdict& v) {
        for (std::size_t i = 0; i < s_.size(); ++i) {
            auto q = swap_plus_minus(s_.program(i).tree);
            if (!q) continue;
            ++v.checked;
            const std::uint64_t b = value(*q);
            if (b == values_[i]) {
                witness(v, {name(i), "plus-to-minus(" + name(i) + ")"}, {text(i), pretty_print(*q)},
                        {values_[i], b});
                v.note = "distinct programs differing in one operator";
                return;
            }
        }
        for (std::size_t i = 0; i < s_.size(); ++i)
            for (std::size_t j = i + 1; j < s_.size(); ++j) {
                ++v.checked;
                if (values_[i] == values_[j] &&
                    !structurally_equal(s_.program(i).tree, s_.program(j).tree)) {
                    witness(v, {name(i), name(j)}, {text(i), text(j)}, {values_[i], values_[j]});
                    return;
                }
            }
    }

    std::optional<std::size_t> index_of(const std::string& n) const {
        for (std::size_t i = 0; i < s_.size(); ++i)
            if (name(i) == n) return i;
        return std::nullopt;
    }

    void p4(PropertyVerdict& v) {
        for (const auto& [a, b] : s_.corpus().equivalent) {
            auto i = index_of(a), j = index_of(b);
            if (!i || !j) continue;
            ++v.checked;
            if (values_[*i] != values_[*j]) {
                witness(v, {a, b}, {text(*i), text(*j)}, {values_[*i], values_[*j]});
                v.note = "equivalent pair listed in the corpus manifest";
                return;
            }
        }
        // `if (true) { suffix }` computes the same function as the suffix.
        for (std::size_t i = 0; i < s_.size(); ++i) {
            const FunctionDef* main = entry_of(s_.program(i).tree);
            if (!main) continue;
            for (std::size_t k = 0; k < main->body.body.size(); ++k) {
                ++v.checked;
                SyntaxTree q = wrap_in_if_true(s_.program(i).tree, k);
                const std::uint64_t b = value(q);
                if (b != values_[i]) {
                    witness(v, {name(i), "if-true-wrap(" + name(i) + ", " + std::to_string(k) + ")"},
                            {text(i), pretty_print(q)}, {values_[i], b});
                    v.note = "suffix wrapped in if (true)";
                    return;
                }
            }
        }
    }

    void p5(PropertyVerdict& v) {
        v.status = VerdictStatus::HoldsOnSample;
        for (const auto& [i, j] : pair_schedule(s_.size())) {
            auto pq = try_compose(s_.program(i).tree, s_.program(j).tree);
            if (!pq) continue;
            ++v.checked;
            const std::uint64_t c = value(*pq);
            if (c < values_[i] || c < values_[j]) {
                v.status = VerdictStatus::Refuted;
                v.witness = {name(i), name(j)};
                v.witness_programs = {text(i), text(j), pretty_print(*pq)};
                v.values = {values_[i], values_[j], c};
                break;
            }
        }
        v.note = "checked |P| <= |P;Q| and |Q| <= |P;Q| on " + std::to_string(v.checked) +
                 " composed pairs";
        if (skipped_) v.note += "; " + std::to_string(skipped_) + " pairs could not be composed";
    }

    struct Triple {
        std::size_t a, b, r;
        std::uint64_t x, y;
    };

    // Look for R separating two programs of equal ESCIM. With `seam_free` an
    // empty `if (false) {}` sits between the parts so no leaf spans them.
    std::optional<Triple> search_context(bool prefix, bool seam_free, std::size_t& checked) {
        static const SyntaxTree sep = parse_source("void main() { if (false) { } }", "separator");
        auto joined = [&](const SyntaxTree& x, const SyntaxTree& r) -> std::optional<std::uint64_t> {
            const SyntaxTree& first = prefix ? r : x;
            const SyntaxTree& second = prefix ? x : r;
            std::optional<SyntaxTree> head = seam_free ? try_compose(first, sep) : first;
            if (!head) return std::nullopt;
            auto whole = try_compose(*head, second);
            if (!whole) return std::nullopt;
            return value(*whole);
        };
        std::map<std::uint64_t, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < s_.size(); ++i) buckets[values_[i]].push_back(i);
        const std::size_t contexts = std::min<std::size_t>(s_.size(), 24);
        constexpr std::size_t kBudget = 1500;
        checked = 0;
        for (const auto& [val, members] : buckets) {
            for (std::size_t k = 0; k + 1 < members.size() && k < 8; ++k) {
                const std::size_t a = members[k], b = members[k + 1];
                if (structurally_equal(s_.program(a).tree, s_.program(b).tree)) continue;
                for (std::size_t r = 0; r < contexts; ++r) {
                    if (checked >= kBudget) return std::nullopt;
                    auto x = joined(s_.program(a).tree, s_.program(r).tree);
                    auto y = joined(s_.program(b).tree, s_.program(r).tree);
                    if (!x || !y) continue;
                    ++checked;
                    if (*x != *y) return Triple{a, b, r, *x, *y};
                }
            }
        }
        return std::nullopt;
    }

    std::string shared_with(std::size_t x, std::size_t r, bool prefix) {
        ComposeInfo info;
        const SyntaxTree& px = s_.program(x).tree;
        const SyntaxTree& pr = s_.program(r).tree;
        try {
            prefix ? compose(pr, px, ComposePolicy::Unify, &info) : compose(px, pr, ComposePolicy::Unify, &info);
        } catch (const ComposeError&) {
            return "(not composable)";
        }
        std::string out = "[";
        for (const auto* list : {&info.unified_variables, &info.shared_items})
            for (const std::string& n : *list) out += (out.size() > 1 ? " " : "") + n;
        return out + "]";
    }

    void p6(PropertyVerdict& v, bool prefix) {
        auto found = search_context(prefix, false, v.checked);
        if (found) {
            const Triple& t = *found;
            witness(v, {name(t.a), name(t.b), name(t.r)}, {text(t.a), text(t.b), text(t.r)},
                    {values_[t.a], values_[t.b], t.x, t.y});
        }
        if (mode_ == SiMode::Absolute) {
            v.note = "SICN levels left by the first program carry into the later program's terms";
            return;
        }
        std::size_t seam_checked = 0;
        auto seam_free = search_context(prefix, true, seam_checked);
        v.note = "in this mode SI counts changes inside a region, so the SICN level one part leaves "
                 "behind does not reach the other part's terms, which the carry-over argument for this property assumes; ";
        if (seam_free) {
            const Triple& t = *seam_free;
            v.note += "a difference survives an `if (false) {}` separator (" + name(t.a) + ", " + name(t.b) +
                      ", " + name(t.r) + "); merged with the context they unify or share " +
                      shared_with(t.a, t.r, prefix) + " and " + shared_with(t.b, t.r, prefix) + " respectively";
        } else {
            v.note += "with an `if (false) {}` separator between the parts no triple differs (" +
                      std::to_string(seam_checked) + " checked), so ";
            v.note += found ? "the witness comes from the leaf that straddles the composition boundary"
                            : "no witness exists on this sample";
        }
    }

    void p7(PropertyVerdict& v) {
        for (std::size_t i = 0; i < s_.size(); ++i) {
            const FunctionDef* main = entry_of(s_.program(i).tree);
            if (!main || main->body.body.size() < 2) continue;
            const std::size_t n = main->body.body.size();
            std::vector<std::vector<std::size_t>> orders;
            std::vector<std::size_t> reversed(n);
            for (std::size_t k = 0; k < n; ++k) reversed[k] = n - 1 - k;
            orders.push_back(reversed);
            for (std::size_t k = 0; k + 1 < n; ++k) {
                std::vector<std::size_t> swapped(n);
                for (std::size_t m = 0; m < n; ++m) swapped[m] = m;
                std::swap(swapped[k], swapped[k + 1]);
                orders.push_back(swapped);
            }
            for (const auto& order : orders) {
                SyntaxTree q;
                try {
                    q = permute(s_.program(i).tree, order);
                } catch (const InvalidPermutation&) {
                    continue;
                }
                ++v.checked;
                const std::uint64_t b = value(q);
                if (b != values_[i]) {
                    std::string desc = "permute(" + name(i) + ", [";
                    for (std::size_t m = 0; m < order.size(); ++m) desc += (m ? "," : "") + std::to_string(order[m]);
                    witness(v, {name(i), desc + "])"}, {text(i), pretty_print(q)}, {values_[i], b});
                    return;
                }
            }
        }
    }

    void p8(PropertyVerdict& v) {
        v.status = VerdictStatus::HoldsOnSample;
        for (std::size_t i = 0; i < s_.size(); ++i) {
            const Analysis& a = s_.analysis(i);
            std::map<std::string, std::string> mapping;
            for (const ScopedVariable& var : a.scopes.variables) mapping[var.name] = var.name + "_r";
            const SyntaxTree renamed = rename(s_.program(i).tree, mapping);
            const Analysis b = analyze_tree(renamed);
            const MetricsReport ra = make_report(a, s_.weights(), mode_);
            const MetricsReport rb = make_report(b, s_.weights(), mode_);
            ++v.checked;
            const bool same = ra.escim == rb.escim && ra.i_l == rb.i_l && ra.loc == rb.loc &&
                              si(Region::whole(), a.ledger, mode_) == si(Region::whole(), b.ledger, mode_);
            if (!same) {
                v.status = VerdictStatus::Refuted;
                v.witness = {name(i)};
                v.witness_programs = {text(i), pretty_print(renamed)};
                v.values = {ra.escim, rb.escim};
                return;
            }
        }
        v.note = "ESCIM, SI, I(L) and LOC compared before and after renaming every variable";
    }

    void p9(PropertyVerdict& v) {
        // Existential in the listed <= form; a strict pair is preferred as
        // witness. Violations of <= are counted for the note.
        std::size_t strict = 0, violations = 0;
        std::optional<std::pair<std::size_t, std::size_t>> strict_pair, weak_pair, violation_pair;
        std::uint64_t strict_value = 0, weak_value = 0;
        for (const auto& [i, j] : pair_schedule(s_.size())) {
            ComposeInfo info;
            auto pq = try_compose(s_.program(i).tree, s_.program(j).tree, &info);
            // Shared functions are kept once, so P;Q is not a plain concatenation.
            if (!pq || info.deduplicated_function) continue;
            ++v.checked;
            const std::uint64_t c = value(*pq);
            const std::uint64_t sum = values_[i] + values_[j];
            if (c > sum) {
                if (!strict++) strict_pair = {i, j}, strict_value = c;
            } else if (c == sum) {
                if (!weak_pair) weak_pair = {i, j}, weak_value = c;
            } else if (!violations++) {
                violation_pair = {i, j};
            }
        }
        if (strict_pair || weak_pair) {
            const auto [i, j] = strict_pair ? *strict_pair : *weak_pair;
            witness(v, {name(i), name(j)}, {text(i), text(j)},
                    {values_[i], values_[j], strict_pair ? strict_value : weak_value});
        }
        v.note = "|P| + |Q| < |P;Q| on " + std::to_string(strict) + " of " + std::to_string(v.checked) +
                 " composed pairs, > on " + std::to_string(violations);
        if (violation_pair)
            v.note += " (first: " + name(violation_pair->first) + " ; " + name(violation_pair->second) + ")";
    }

    SiMode mode_;
    const Sample& s_;
    std::vector<std::uint64_t> values_;
    std::size_t skipped_ = 0;
};

}  // namespace

PropertyVerdict check_property(const std::string& id, SiMode mode, const Sample& sample) {
    return Checker(mode, sample).run(id);
}

VerdictTable run_matrix(const MatrixConfig& config) {
    const Sample sample(config.corpus, config.seed, config.samples, config.weights);
    VerdictTable table;
    table.seed = config.seed;
    table.corpus_programs = config.corpus.programs.size();
    table.generated_programs = config.samples;
    table.modes = config.modes;
    std::vector<Checker> checkers;
    for (SiMode mode : config.modes) checkers.emplace_back(mode, sample);
    for (const std::string& id : property_ids())
        for (Checker& c : checkers) table.verdicts.push_back(c.run(id));
    return table;
}

nlohmann::ordered_json verdicts_json(const VerdictTable& table) {
    nlohmann::ordered_json out;
    out["seed"] = table.seed;
    out["corpus_programs"] = table.corpus_programs;
    out["generated_programs"] = table.generated_programs;
    out["modes"] = nlohmann::ordered_json::array();
    for (SiMode m : table.modes) out["modes"].push_back(to_string(m));
    out["verdicts"] = nlohmann::ordered_json::array();
    for (const PropertyVerdict& v : table.verdicts) {
        nlohmann::ordered_json row{{"property", v.id},
                                   {"mode", to_string(v.mode)},
                                   {"status", to_string(v.status)},
                                   {"checked", v.checked},
                                   {"values", v.values},
                                   {"witness", v.witness},
                                   {"witness_programs", v.witness_programs},
                                   {"note", v.note}};
        out["verdicts"].push_back(std::move(row));
    }
    return out;
}

std::string verdicts_text(const VerdictTable& table) {
    std::ostringstream out;
    out << "Weyuker property conformance of ESCIM\n";
    out << "seed " << table.seed << ", " << table.corpus_programs << " corpus programs, "
        << table.generated_programs << " generated programs\n\n";
    out << "property";
    for (SiMode m : table.modes) {
        std::string h(to_string(m));
        out << "  " << h << std::string(18 - h.size(), ' ');
    }
    out << '\n';
    for (const std::string& id : property_ids()) {
        out << id << std::string(8 - id.size(), ' ');
        for (SiMode m : table.modes) {
            const PropertyVerdict* v = table.find(id, m);
            std::string cell(to_string(v->status));
            const bool ok = v->status == VerdictStatus::Witnessed || v->status == VerdictStatus::HoldsOnSample;
            cell += ok ? " /" : " x";
            out << "  " << cell << std::string(18 - std::min<std::size_t>(cell.size(), 18), ' ');
        }
        out << '\n';
    }
    out << "\nnotes:\n";
    for (const PropertyVerdict& v : table.verdicts) {
        if (v.note.empty() && v.witness.empty()) continue;
        out << "  [" << v.id << ' ' << to_string(v.mode) << "] " << to_string(v.status);
        if (!v.witness.empty()) {
            out << " by";
            for (const std::string& w : v.witness) out << ' ' << w;
        }
        if (!v.values.empty()) {
            out << " (ESCIM";
            for (std::uint64_t x : v.values) out << ' ' << x;
            out << ')';
        }
        if (!v.note.empty()) out << "; " << v.note;
        out << '\n';
    }
    return out.str();
}

}  // namespace escim
