#include "escim/parser.hpp"

namespace escim {

namespace {

constexpr int kAssignPrec = 0;
constexpr int kUnaryPrec = 7;
constexpr int kPostfixPrec = 8;
constexpr int kPrimaryPrec = 9;

int binary_prec(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    return 6;  // * / %
}

int prec_of(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Assignment:
        case ExprKind::CompoundAssignment: return kAssignPrec;
        case ExprKind::BinaryOp: return binary_prec(e.op);
        case ExprKind::UnaryOp: return kUnaryPrec;
        case ExprKind::Index:
        case ExprKind::MemberAccess:
        case ExprKind::Increment:
        case ExprKind::Decrement: return kPostfixPrec;
        default: return kPrimaryPrec;
    }
}

void print_expr(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
    if (parens) out += '(';
    print_expr(e, out);
    if (parens) out += ')';
}

void print_expr(const Expr& e, std::string& out) {
    switch (e.kind) {
        case ExprKind::Literal:
        case ExprKind::VariableRef:
            out += e.text;
            return;
        case ExprKind::GlobalRef:
            out += "::" + e.text;
            return;
        case ExprKind::MemberAccess:
            print_wrapped(e.children[0], prec_of(e.children[0]) < kPostfixPrec, out);
            out += '.' + e.text;
            return;
        case ExprKind::Index:
            print_wrapped(e.children[0], prec_of(e.children[0]) < kPostfixPrec, out);
            out += '[';
            print_expr(e.children[1], out);
            out += ']';
            return;
        case ExprKind::Call:
            out += e.text + '(';
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                print_expr(e.children[i], out);
            }
            out += ')';
            return;
        case ExprKind::Increment:
        case ExprKind::Decrement:
            print_wrapped(e.children[0], prec_of(e.children[0]) < kPostfixPrec, out);
            out += e.op;
            return;
        case ExprKind::UnaryOp: {
            out += e.op;
            const Expr& operand = e.children[0];
            // `- -x` would lex as `--x`.
            bool parens = prec_of(operand) < kUnaryPrec ||
                          (operand.kind == ExprKind::UnaryOp && operand.op == "-" && e.op == "-");
            print_wrapped(operand, parens, out);
            return;
        }
        case ExprKind::BinaryOp: {
            const int p = binary_prec(e.op);
            print_wrapped(e.children[0], prec_of(e.children[0]) < p, out);
            out += ' ' + e.op + ' ';
            print_wrapped(e.children[1], prec_of(e.children[1]) <= p, out);
            return;
        }
        case ExprKind::Assignment:
        case ExprKind::CompoundAssignment:
            print_wrapped(e.children[0], prec_of(e.children[0]) < kPostfixPrec, out);
            out += ' ' + e.op + ' ';
            print_expr(e.children[1], out);
            return;
    }
}

std::string indent_str(int indent) { return std::string(static_cast<std::size_t>(indent) * 4, ' '); }

std::string declaration_text(const Stmt& s) {
    std::string out = s.type.base + ' ' + s.name;
    if (s.type.is_array) {
        out += '[';
        if (s.type.array_size) out += std::to_string(*s.type.array_size);
        out += ']';
    }
    if (s.expr) {
        out += " = " + pretty_print(*s.expr);
    } else if (s.has_init_list) {
        out += " = {";
        for (std::size_t i = 0; i < s.init_list.size(); ++i) {
            if (i) out += ", ";
            out += pretty_print(s.init_list[i]);
        }
        out += '}';
    }
    return out + ';';
}

void print_stmt(const Stmt& s, int indent, std::string& out);

// Body of if/while/for/do: blocks open on the same line, other statements on
// their own indented line.
void print_body(const Stmt& body, int indent, std::string& out) {
    if (body.kind == StmtKind::Block) {
        out += ' ';
        std::string block;
        print_stmt(body, indent, block);
        out += block.substr(static_cast<std::size_t>(indent) * 4);
    } else {
        out += '\n';
        print_stmt(body, indent + 1, out);
    }
}

void print_stmt(const Stmt& s, int indent, std::string& out) {
    const std::string pad = indent_str(indent);
    switch (s.kind) {
        case StmtKind::Declaration:
            out += pad + declaration_text(s) + '\n';
            return;
        case StmtKind::Expression:
            out += pad + pretty_print(*s.expr) + ";\n";
            return;
        case StmtKind::Return:
            out += pad + "return";
            if (s.expr) out += ' ' + pretty_print(*s.expr);
            out += ";\n";
            return;
        case StmtKind::Break: out += pad + "break;\n"; return;
        case StmtKind::Continue: out += pad + "continue;\n"; return;
        case StmtKind::Goto: out += pad + "goto " + s.name + ";\n"; return;
        case StmtKind::Empty: out += pad + ";\n"; return;
        case StmtKind::Labeled: {
            std::string inner;
            print_stmt(s.body[0], indent, inner);
            out += pad + s.name + ": " + inner.substr(pad.size());
            return;
        }
        case StmtKind::Block:
            out += pad + "{\n";
            for (const Stmt& c : s.body) print_stmt(c, indent + 1, out);
            out += pad + "}\n";
            return;
        case StmtKind::If: {
            out += pad + "if (" + pretty_print(*s.expr) + ')';
            print_body(s.body[0], indent, out);
            if (s.body.size() > 1) {
                if (s.body[0].kind == StmtKind::Block) {
                    out.pop_back();  // join "} else"
                    out += " else";
                } else {
                    out += pad + "else";
                }
                if (s.body[1].kind == StmtKind::If) {
                    std::string chained;
                    print_stmt(s.body[1], indent, chained);
                    out += ' ' + chained.substr(pad.size());
                } else {
                    print_body(s.body[1], indent, out);
                }
            }
            return;
        }
        case StmtKind::While:
            out += pad + "while (" + pretty_print(*s.expr) + ')';
            print_body(s.body[0], indent, out);
            return;
        case StmtKind::DoWhile:
            out += pad + "do";
            print_body(s.body[0], indent, out);
            if (s.body[0].kind == StmtKind::Block) {
                out.pop_back();
                out += " while (" + pretty_print(*s.expr) + ");\n";
            } else {
                out += pad + "while (" + pretty_print(*s.expr) + ");\n";
            }
            return;
        case StmtKind::For: {
            out += pad + "for (";
            if (s.init.empty()) {
                out += ';';
            } else if (s.init[0].kind == StmtKind::Declaration) {
                out += declaration_text(s.init[0]);
            } else {
                out += pretty_print(*s.init[0].expr) + ';';
            }
            if (s.expr) out += ' ' + pretty_print(*s.expr);
            out += ';';
            if (s.update) out += ' ' + pretty_print(*s.update);
            out += ')';
            print_body(s.body[0], indent, out);
            return;
        }
        case StmtKind::Switch:
            out += pad + "switch (" + pretty_print(*s.expr) + ") {\n";
            for (const SwitchArm& arm : s.arms) {
                out += pad + (arm.label ? "case " + pretty_print(*arm.label) + ":\n" : "default:\n");
                for (const Stmt& c : arm.body) print_stmt(c, indent + 1, out);
            }
            out += pad + "}\n";
            return;
    }
}

std::string param_text(const Param& p) {
    std::string out = p.type.base + ' ' + p.name;
    if (p.type.is_array) {
        out += '[';
        if (p.type.array_size) out += std::to_string(*p.type.array_size);
        out += ']';
    }
    return out;
}

}  // namespace

std::string pretty_print(const Expr& expr) {
    std::string out;
    print_expr(expr, out);
    return out;
}

std::string pretty_print(const Stmt& stmt, int indent) {
    std::string out;
    print_stmt(stmt, indent, out);
    return out;
}

std::string pretty_print(const SyntaxTree& tree) {
    std::string out;
    bool first = true;
    for (const Item& item : tree.items) {
        const bool is_global = std::holds_alternative<Stmt>(item);
        if (!first && !is_global) out += '\n';
        first = false;
        if (const auto* r = std::get_if<RecordDef>(&item)) {
            out += "struct " + r->name + " {\n";
            for (const Field& f : r->fields) {
                out += "    " + f.type.base + ' ' + f.name;
                if (f.type.is_array) {
                    out += '[';
                    if (f.type.array_size) out += std::to_string(*f.type.array_size);
                    out += ']';
                }
                out += ";\n";
            }
            out += "};\n";
        } else if (const auto* fn = std::get_if<FunctionDef>(&item)) {
            out += fn->return_type.to_string() + ' ' + fn->name + '(';
            for (std::size_t i = 0; i < fn->params.size(); ++i) {
                if (i) out += ", ";
                out += param_text(fn->params[i]);
            }
            out += ") ";
            out += pretty_print(fn->body, 0);
        } else {
            out += pretty_print(std::get<Stmt>(item), 0);
        }
    }
    return out;
}

}  // namespace escim
