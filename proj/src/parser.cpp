#include "escim/parser.hpp"

#include <algorithm>
#include <charconv>
#include <initializer_list>

namespace escim {

namespace {

bool is_assign_op(std::string_view t) {
    return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" || t == "%=";
}

class Parser {
public:
    Parser(const std::vector<Token>& tokens, std::string file)
        : tokens_(tokens), file_(std::move(file)) {
        end_.kind = TokenKind::EndOfInput;
        if (!tokens_.empty()) {
            const SourceSpan& last = tokens_.back().span;
            end_.span = SourceSpan{last.file, last.line_end, last.col_end + 1, last.line_end,
                                   last.col_end + 1};
        } else {
            end_.span = SourceSpan{file_, 1, 1, 1, 1};
        }
    }

    SyntaxTree run() {
        SyntaxTree tree;
        tree.file = file_;
        while (!at_end()) tree.items.push_back(parse_item());
        return tree;
    }

private:
    // ---- token helpers -------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : end_;
    }
    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& previous() const { return tokens_[pos_ - 1]; }

    bool check(TokenKind kind, std::string_view text) const { return peek().is(kind, text); }
    bool check_punct(std::string_view t) const { return check(TokenKind::Punctuation, t); }
    bool check_op(std::string_view t) const { return check(TokenKind::Operator, t); }
    bool check_kw(std::string_view t) const { return check(TokenKind::Keyword, t); }

    const Token& advance() {
        const Token& t = peek();
        if (!at_end()) ++pos_;
        return t;
    }

    bool accept_punct(std::string_view t) {
        if (!check_punct(t)) return false;
        advance();
        return true;
    }
    bool accept_op(std::string_view t) {
        if (!check_op(t)) return false;
        advance();
        return true;
    }
    bool accept_kw(std::string_view t) {
        if (!check_kw(t)) return false;
        advance();
        return true;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string found = t.kind == TokenKind::EndOfInput ? "end of input" : "'" + t.text + "'";
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        msg += " but found " + found;
        throw ParseError(msg, t.span, std::move(expected));
    }

    [[noreturn]] void fail_msg(const std::string& msg, const SourceSpan& span) const {
        throw ParseError(msg, span);
    }

    const Token& expect_punct(std::string_view t) {
        if (!check_punct(t)) fail({"'" + std::string(t) + "'"});
        return advance();
    }
    const Token& expect_op(std::string_view t) {
        if (!check_op(t)) fail({"'" + std::string(t) + "'"});
        return advance();
    }
    const Token& expect_kw(std::string_view t) {
        if (!check_kw(t)) fail({"'" + std::string(t) + "'"});
        return advance();
    }
    const Token& expect_ident() {
        if (peek().kind != TokenKind::Identifier) fail({"identifier"});
        return advance();
    }

    NodeId fresh() { return next_id_++; }
    SourceSpan from(const SourceSpan& start) const { return cover(start, previous().span); }

    // ---- types -----------------------------------------------------------

    bool at_base_type() const {
        return check_kw("int") || check_kw("float") || check_kw("bool");
    }

    // IDENT IDENT, IDENT '[' ']' or IDENT '[' INT ']' IDENT start a record-typed
    // declaration; anything else starting with IDENT is an expression.
    bool at_record_type() const {
        if (peek().kind != TokenKind::Identifier) return false;
        const Token& next = peek(1);
        if (next.kind == TokenKind::Identifier) return true;
        if (next.is(TokenKind::Punctuation, "[")) {
            if (peek(2).is(TokenKind::Punctuation, "]")) return true;
            return peek(2).kind == TokenKind::IntLiteral &&
                   peek(3).is(TokenKind::Punctuation, "]") &&
                   peek(4).kind == TokenKind::Identifier;
        }
        return false;
    }

    bool at_decl_start() const { return at_base_type() || at_record_type(); }

    std::optional<std::int64_t> parse_array_size() {
        if (peek().kind != TokenKind::IntLiteral) return std::nullopt;
        const Token& t = advance();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size())
            fail_msg("array size out of range", t.span);
        return value;
    }

    TypeName parse_type(bool allow_void) {
        TypeName type;
        if (at_base_type() || (allow_void && check_kw("void"))) {
            type.base = advance().text;
        } else if (peek().kind == TokenKind::Identifier) {
            type.base = advance().text;
        } else {
            std::vector<std::string> exp = {"'int'", "'float'", "'bool'"};
            if (allow_void) exp.push_back("'void'");
            exp.push_back("type name");
            fail(std::move(exp));
        }
        if (accept_punct("[")) {
            type.is_array = true;
            type.array_size = parse_array_size();
            expect_punct("]");
        }
        return type;
    }

    // C-style suffix after the declared name: `a[10]`, `a[]`.
    void parse_declarator_suffix(TypeName& type) {
        if (!check_punct("[")) return;
        const Token& open = advance();
        if (type.is_array) fail_msg("array of arrays is not supported", open.span);
        type.is_array = true;
        type.array_size = parse_array_size();
        expect_punct("]");
    }

    // ---- items -----------------------------------------------------------

    Item parse_item() {
        if (check_kw("struct")) return parse_record();
        const SourceSpan start = peek().span;
        const std::size_t save = pos_;
        const NodeId save_id = next_id_;
        TypeName type = parse_type(/*allow_void=*/true);
        expect_ident();
        if (check_punct("(")) {
            pos_ = save;
            next_id_ = save_id;
            return parse_function();
        }
        if (type.base == "void") fail_msg("variables cannot have type void", start);
        pos_ = save;
        next_id_ = save_id;
        return parse_declaration();
    }

    RecordDef parse_record() {
        RecordDef rec;
        rec.id = fresh();
        const SourceSpan start = expect_kw("struct").span;
        rec.name = expect_ident().text;
        expect_punct("{");
        while (!check_punct("}")) {
            if (at_end()) fail({"'}'"});
            Field f;
            const SourceSpan fstart = peek().span;
            f.type = parse_type(false);
            f.name = expect_ident().text;
            parse_declarator_suffix(f.type);
            expect_punct(";");
            f.span = from(fstart);
            if (std::any_of(rec.fields.begin(), rec.fields.end(),
                            [&](const Field& g) { return g.name == f.name; }))
                throw DuplicateDeclaration("duplicate member '" + f.name + "'", f.span);
            rec.fields.push_back(std::move(f));
        }
        expect_punct("}");
        expect_punct(";");
        rec.span = from(start);
        if (rec.fields.empty())
            fail_msg("record '" + rec.name + "' must declare at least one member", rec.span);
        return rec;
    }

    FunctionDef parse_function() {
        FunctionDef fn;
        fn.id = fresh();
        const SourceSpan start = peek().span;
        fn.return_type = parse_type(true);
        fn.name = expect_ident().text;
        expect_punct("(");
        if (!check_punct(")")) {
            do {
                Param p;
                p.id = fresh();
                const SourceSpan pstart = peek().span;
                p.type = parse_type(false);
                p.name = expect_ident().text;
                parse_declarator_suffix(p.type);
                p.span = from(pstart);
                fn.params.push_back(std::move(p));
            } while (accept_punct(","));
        }
        expect_punct(")");
        if (!check_punct("{")) fail({"'{'"});
        fn.body = parse_block();
        fn.span = from(start);
        return fn;
    }

    // ---- statements --------------------------------------------------------

    Stmt parse_block() {
        Stmt s;
        s.kind = StmtKind::Block;
        s.id = fresh();
        const SourceSpan start = expect_punct("{").span;
        while (!check_punct("}")) {
            if (at_end()) fail({"'}'"});
            s.body.push_back(parse_statement());
        }
        expect_punct("}");
        s.span = from(start);
        return s;
    }

    Stmt parse_declaration() {
        Stmt s;
        s.kind = StmtKind::Declaration;
        s.id = fresh();
        const SourceSpan start = peek().span;
        s.type = parse_type(false);
        s.name = expect_ident().text;
        parse_declarator_suffix(s.type);
        if (accept_op("=")) {
            if (accept_punct("{")) {
                s.has_init_list = true;
                do {
                    s.init_list.push_back(parse_expression());
                } while (accept_punct(","));
                expect_punct("}");
            } else {
                s.expr = parse_expression();
            }
        }
        expect_punct(";");
        s.span = from(start);
        return s;
    }

    Stmt make_simple(StmtKind kind, const SourceSpan& start, NodeId id) {
        Stmt s;
        s.kind = kind;
        s.id = id;
        s.span = from(start);
        return s;
    }

    Stmt parse_statement() {
        const Token& t = peek();
        const SourceSpan start = t.span;
        if (check_punct("{")) return parse_block();
        if (check_punct(";")) {
            NodeId id = fresh();
            advance();
            return make_simple(StmtKind::Empty, start, id);
        }
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if") return parse_if();
            if (t.text == "switch") return parse_switch();
            if (t.text == "while") return parse_while();
            if (t.text == "do") return parse_do();
            if (t.text == "for") return parse_for();
            if (t.text == "return") {
                Stmt s;
                s.kind = StmtKind::Return;
                s.id = fresh();
                advance();
                if (!check_punct(";")) s.expr = parse_expression();
                expect_punct(";");
                s.span = from(start);
                return s;
            }
            if (t.text == "break" || t.text == "continue") {
                NodeId id = fresh();
                advance();
                expect_punct(";");
                return make_simple(t.text == "break" ? StmtKind::Break : StmtKind::Continue,
                                   start, id);
            }
            if (t.text == "goto") {
                Stmt s;
                s.kind = StmtKind::Goto;
                s.id = fresh();
                advance();
                s.name = expect_ident().text;
                expect_punct(";");
                s.span = from(start);
                return s;
            }
        }
        if (at_decl_start()) return parse_declaration();
        if (t.kind == TokenKind::Identifier && peek(1).is(TokenKind::Punctuation, ":")) {
            Stmt s;
            s.kind = StmtKind::Labeled;
            s.id = fresh();
            s.name = advance().text;
            advance();
            s.body.push_back(parse_statement());
            s.span = from(start);
            return s;
        }
        Stmt s;
        s.kind = StmtKind::Expression;
        s.id = fresh();
        s.expr = parse_expression();
        expect_punct(";");
        s.span = from(start);
        return s;
    }

    Stmt parse_if() {
        Stmt s;
        s.kind = StmtKind::If;
        s.id = fresh();
        const SourceSpan start = expect_kw("if").span;
        expect_punct("(");
        s.expr = parse_expression();
        expect_punct(")");
        s.body.push_back(parse_statement());
        if (accept_kw("else")) s.body.push_back(parse_statement());
        s.span = from(start);
        return s;
    }

    Expr parse_case_label() {
        const Token& t = peek();
        if (t.kind == TokenKind::Operator && t.text == "-" &&
            (peek(1).kind == TokenKind::IntLiteral || peek(1).kind == TokenKind::FloatLiteral)) {
            Expr neg;
            neg.kind = ExprKind::UnaryOp;
            neg.op = "-";
            advance();
            neg.children.push_back(parse_primary());
            neg.span = from(t.span);
            return neg;
        }
        if (t.kind == TokenKind::IntLiteral || t.kind == TokenKind::FloatLiteral ||
            check_kw("true") || check_kw("false"))
            return parse_primary();
        fail({"literal"});
    }

    Stmt parse_switch() {
        Stmt s;
        s.kind = StmtKind::Switch;
        s.id = fresh();
        const SourceSpan start = expect_kw("switch").span;
        expect_punct("(");
        s.expr = parse_expression();
        expect_punct(")");
        expect_punct("{");
        while (!check_punct("}")) {
            SwitchArm arm;
            arm.id = fresh();
            const SourceSpan astart = peek().span;
            if (accept_kw("case")) {
                arm.label = parse_case_label();
            } else if (!accept_kw("default")) {
                fail({"'case'", "'default'", "'}'"});
            }
            expect_punct(":");
            while (!check_punct("}") && !check_kw("case") && !check_kw("default")) {
                if (at_end()) fail({"'}'"});
                arm.body.push_back(parse_statement());
            }
            arm.span = from(astart);
            s.arms.push_back(std::move(arm));
        }
        expect_punct("}");
        s.span = from(start);
        return s;
    }

    Stmt parse_while() {
        Stmt s;
        s.kind = StmtKind::While;
        s.id = fresh();
        const SourceSpan start = expect_kw("while").span;
        expect_punct("(");
        s.expr = parse_expression();
        expect_punct(")");
        s.body.push_back(parse_statement());
        s.span = from(start);
        return s;
    }

    Stmt parse_do() {
        Stmt s;
        s.kind = StmtKind::DoWhile;
        s.id = fresh();
        const SourceSpan start = expect_kw("do").span;
        s.body.push_back(parse_statement());
        expect_kw("while");
        expect_punct("(");
        s.expr = parse_expression();
        expect_punct(")");
        expect_punct(";");
        s.span = from(start);
        return s;
    }

    Stmt parse_for() {
        Stmt s;
        s.kind = StmtKind::For;
        s.id = fresh();
        const SourceSpan start = expect_kw("for").span;
        expect_punct("(");
        if (at_decl_start()) {
            s.init.push_back(parse_declaration());
        } else if (!accept_punct(";")) {
            Stmt e;
            e.kind = StmtKind::Expression;
            e.id = fresh();
            const SourceSpan estart = peek().span;
            e.expr = parse_expression();
            e.span = from(estart);
            expect_punct(";");
            s.init.push_back(std::move(e));
        }
        if (!check_punct(";")) s.expr = parse_expression();
        expect_punct(";");
        if (!check_punct(")")) s.update = parse_expression();
        expect_punct(")");
        s.body.push_back(parse_statement());
        s.span = from(start);
        return s;
    }

    // ---- expressions -------------------------------------------------------

    Expr parse_expression() { return parse_assignment(); }

    Expr parse_assignment() {
        const SourceSpan start = peek().span;
        Expr lhs = parse_binary(0);
        if (peek().kind == TokenKind::Operator && is_assign_op(peek().text)) {
            const Token& op = advance();
            if (!lhs.is_lvalue())
                fail_msg("left side of '" + op.text + "' is not assignable", lhs.span);
            Expr node;
            node.kind = op.text == "=" ? ExprKind::Assignment : ExprKind::CompoundAssignment;
            node.op = op.text;
            node.children.push_back(std::move(lhs));
            node.children.push_back(parse_assignment());
            node.span = from(start);
            return node;
        }
        return lhs;
    }

    static int precedence(std::string_view op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "==" || op == "!=") return 3;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
        if (op == "+" || op == "-") return 5;
        if (op == "*" || op == "/" || op == "%") return 6;
        return -1;
    }

    // Precedence climbing over left-associative binary operators.
    Expr parse_binary(int min_prec) {
        const SourceSpan start = peek().span;
        Expr lhs = parse_unary();
        while (peek().kind == TokenKind::Operator) {
            int prec = precedence(peek().text);
            if (prec < 0 || prec < min_prec) break;
            const std::string op = advance().text;
            Expr rhs = parse_binary(prec + 1);
            Expr node;
            node.kind = ExprKind::BinaryOp;
            node.op = op;
            node.span = from(start);
            node.children.push_back(std::move(lhs));
            node.children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr parse_unary() {
        const Token& t = peek();
        if (t.kind == TokenKind::Operator && (t.text == "!" || t.text == "-")) {
            Expr node;
            node.kind = ExprKind::UnaryOp;
            node.op = advance().text;
            node.children.push_back(parse_unary());
            node.span = from(t.span);
            return node;
        }
        return parse_postfix();
    }

    Expr parse_postfix() {
        const SourceSpan start = peek().span;
        Expr e = parse_primary();
        while (true) {
            if (accept_punct("[")) {
                Expr node;
                node.kind = ExprKind::Index;
                node.children.push_back(std::move(e));
                node.children.push_back(parse_expression());
                expect_punct("]");
                node.span = from(start);
                e = std::move(node);
            } else if (accept_op(".")) {
                Expr node;
                node.kind = ExprKind::MemberAccess;
                node.text = expect_ident().text;
                node.children.push_back(std::move(e));
                node.span = from(start);
                e = std::move(node);
            } else if (check_op("++") || check_op("--")) {
                const Token& op = advance();
                if (!e.is_lvalue())
                    fail_msg("operand of '" + op.text + "' is not assignable", e.span);
                Expr node;
                node.kind = op.text == "++" ? ExprKind::Increment : ExprKind::Decrement;
                node.op = op.text;
                node.children.push_back(std::move(e));
                node.span = from(start);
                e = std::move(node);
            } else {
                break;
            }
        }
        return e;
    }

    Expr literal(LiteralKind kind) {
        Expr e;
        e.kind = ExprKind::Literal;
        e.literal = kind;
        const Token& t = advance();
        e.text = t.text;
        e.span = t.span;
        return e;
    }

    Expr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::IntLiteral: return literal(LiteralKind::Int);
            case TokenKind::FloatLiteral: return literal(LiteralKind::Float);
            case TokenKind::StringLiteral:
                fail_msg("string literals are only allowed as the argument of print", t.span);
            case TokenKind::Keyword:
                if (t.text == "true" || t.text == "false") return literal(LiteralKind::Bool);
                break;
            case TokenKind::Identifier: {
                Expr e;
                e.text = advance().text;
                if (accept_punct("(")) {
                    e.kind = ExprKind::Call;
                    if (!check_punct(")")) {
                        do {
                            if (e.text == "print" && peek().kind == TokenKind::StringLiteral &&
                                peek(1).is(TokenKind::Punctuation, ")")) {
                                e.children.push_back(literal(LiteralKind::String));
                            } else {
                                e.children.push_back(parse_expression());
                            }
                        } while (accept_punct(","));
                    }
                    expect_punct(")");
                } else {
                    e.kind = ExprKind::VariableRef;
                }
                e.span = from(t.span);
                return e;
            }
            case TokenKind::Operator:
                if (t.text == "::") {
                    advance();
                    Expr e;
                    e.kind = ExprKind::GlobalRef;
                    e.text = expect_ident().text;
                    e.span = from(t.span);
                    return e;
                }
                break;
            case TokenKind::Punctuation:
                if (t.text == "(") {
                    advance();
                    Expr e = parse_expression();
                    expect_punct(")");
                    return e;
                }
                break;
            default:
                break;
        }
        fail({"expression"});
    }

    const std::vector<Token>& tokens_;
    std::string file_;
    Token end_;
    std::size_t pos_ = 0;
    NodeId next_id_ = 1;
};

}  // namespace

SyntaxTree parse(const std::vector<Token>& tokens, const std::string& file) {
    SyntaxTree tree = Parser(tokens, file).run();
    renumber(tree);
    return tree;
}

SyntaxTree parse_source(std::string_view source, const std::string& file) {
    return parse(tokenize(source, file), file);
}

}  // namespace escim
