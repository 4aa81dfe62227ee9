#include <doctest.h>

#include "escim/generator.hpp"
#include "escim/parser.hpp"
#include "escim/weyuker.hpp"
#include "support.hpp"

using namespace escim;

namespace {

SyntaxTree src(const std::string& body) { return parse_source("void main() {\n" + body + "\n}\n"); }

const Corpus& corpus() {
    static const Corpus c = load_corpus(ESCIM_CORPUS_DIR);
    return c;
}

const SyntaxTree& program(const std::string& name) {
    for (const Program& p : corpus().programs)
        if (p.name == name) return p.tree;
    throw std::runtime_error("missing fixture " + name);
}

bool resolves(const SyntaxTree& t) {
    try {
        const SyntaxTree again = parse_source(pretty_print(t));
        resolve_occurrences(again, build_scope_tree(again));
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

TEST_CASE("compose disjoint programs") {
    const SyntaxTree pq = compose(src("int a; a=1;"), src("int b; b=2;"));
    CHECK(testing::main_of(pq).body.body.size() == 4);
    CHECK(escim_of(pq, SiMode::Delta) == 2);
}

TEST_CASE("a duplicated declaration becomes a read and an assignment") {
    ComposeInfo info;
    const SyntaxTree pq = compose(src("int v; v = 1; v = 2;"), src("int v = 5; print(v);"), ComposePolicy::Unify, &info);
    const std::string text = pretty_print(pq);
    CHECK(text.find("int v = 5") == std::string::npos);
    CHECK(text.find("v = 5;") != std::string::npos);
    CHECK(info.unified_variables == std::vector<std::string>{"v"});
    CHECK(resolves(pq));
    // SICN of v keeps growing across the seam: 1, 2, then 3 for v = 5
    const Analysis a = analyze_tree(pq);
    CHECK(sicn_max(a.scopes.variables_named("v")[0], Region::whole(), a.ledger) == 3);
}

TEST_CASE("compose with an empty program is the identity") {
    const SyntaxTree& p = program("example6.mc");
    CHECK(structurally_equal(compose(p, SyntaxTree{}), p));
    CHECK(structurally_equal(compose(SyntaxTree{}, p), p));
}

TEST_CASE("compose errors") {
    CHECK_THROWS_AS(compose(src("int v;"), src("bool v;")), ComposeError);
    CHECK_THROWS_AS(compose(src("int v[2];"), src("int v[] = {1, 2};")), ComposeError);
    CHECK_THROWS_AS(compose(parse_source("int g; void main() {}"), parse_source("bool g; void main() {}")), ComposeError);
}

TEST_CASE("conflicting functions and labels in Q are renamed") {
    ComposeInfo info;
    const SyntaxTree p = parse_source("int f() { return 1; }\nvoid main() { print(f()); goto x; x: ; }");
    const SyntaxTree q = parse_source("int f() { return 2; }\nvoid main() { print(f()); goto x; x: ; }");
    const SyntaxTree pq = compose(p, q, ComposePolicy::Unify, &info);
    CHECK(info.renamed_items.size() == 1);
    CHECK(info.renamed_labels.size() == 1);
    CHECK_FALSE(info.deduplicated_function);
    CHECK(resolves(pq));
    CHECK(pq.functions().size() == 3);

    ComposeInfo same;
    compose(p, p, ComposePolicy::Unify, &same);
    CHECK(same.deduplicated_function);
}

TEST_CASE("a redeclared global is re-initialized in main") {
    const SyntaxTree pq = compose(parse_source("int g = 1; void main() { g = g + 1; }"),
                                  parse_source("int g = 1; void main() { print(g); }"));
    CHECK(std::count_if(pq.items.begin(), pq.items.end(), [](const Item& i) { return std::holds_alternative<Stmt>(i); }) == 1);
    CHECK(pretty_print(pq).find("::g = 1;") != std::string::npos);
    CHECK(resolves(pq));
}

TEST_CASE("fresh-rename policy keeps the variables apart") {
    ComposeInfo info;
    const SyntaxTree pq = compose(src("int v; v = 1;"), src("int v = 5; print(v);"), ComposePolicy::FreshRename, &info);
    CHECK(info.renamed_variables.size() == 1);
    const Analysis a = analyze_tree(pq);
    CHECK(a.scopes.variables.size() == 2);
}

TEST_CASE("composition over the corpus re-resolves and is associative") {
    std::vector<const Program*> ps;
    for (const Program& p : corpus().programs) ps.push_back(&p);
    std::size_t composed = 0;
    for (const Program* p : ps)
        for (const Program* q : ps) {
            if (p == q) continue;
            try {
                const SyntaxTree pq = compose(p->tree, q->tree);
                CAPTURE(p->name);
                CAPTURE(q->name);
                CHECK(resolves(pq));
                ++composed;
            } catch (const ComposeError&) {
            }
        }
    CHECK(composed > 60);

    std::size_t triples = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j)
            for (std::size_t k = 0; k < ps.size(); ++k) {
                if (i == j || j == k || i == k) continue;
                try {
                    const SyntaxTree left = compose(compose(ps[i]->tree, ps[j]->tree), ps[k]->tree);
                    const SyntaxTree right = compose(ps[i]->tree, compose(ps[j]->tree, ps[k]->tree));
                    CAPTURE(ps[i]->name);
                    CAPTURE(ps[j]->name);
                    CAPTURE(ps[k]->name);
                    CHECK(structurally_equal(left, right));
                    ++triples;
                } catch (const ComposeError&) {
                }
            }
    CHECK(triples > 300);
}

TEST_CASE("rename") {
    const SyntaxTree& e1 = program("example1.mc");
    const SyntaxTree r = rename(e1, {{"userInput", "x"}, {"square", "y"}});
    const Analysis a = analyze_tree(r);
    CHECK(info_icn(Region::whole(), a.ledger) == 3);
    CHECK(escim_of(r, SiMode::Delta) == escim_of(e1, SiMode::Delta));
    CHECK(pretty_print(r).find("userInput") == std::string::npos);

    CHECK(pretty_print(rename(e1, {})) == pretty_print(e1));
    CHECK_THROWS_AS(rename(e1, {{"userInput", "v"}, {"square", "v"}}), RenameCollision);
    CHECK_THROWS_AS(rename(e1, {{"square", "while"}}), RenameCollision);
    CHECK_THROWS_AS(rename(e1, {{"square", "9x"}}), RenameCollision);
    // capturing a global by a local changes binding
    const SyntaxTree cap = parse_source("int g = 1;\nvoid main() {\n    int l = 2;\n    print(g);\n}\n");
    CHECK_THROWS_AS(rename(cap, {{"l", "g"}}), RenameCollision);
    // the two amounts of example 2 stay distinct even under one new name
    const SyntaxTree e2 = rename(program("example2.mc"), {{"amount", "cash"}});
    CHECK(analyze_tree(e2).scopes.variables_named("cash").size() == 3);
}

TEST_CASE("permute") {
    const SyntaxTree p = src("int a;\nint b;\na = 1;\nb = a + 2;\nprint(b);");
    // swap two statements inside one leaf: delta SI unchanged
    const SyntaxTree q = permute(p, {1, 0, 2, 3, 4});
    CHECK(escim_of(q, SiMode::Delta) == escim_of(p, SiMode::Delta));
    CHECK_THROWS_AS(permute(p, {2, 0, 1, 3, 4}), InvalidPermutation);
    CHECK_THROWS_AS(permute(p, {0, 0, 1, 2, 3}), InvalidPermutation);
    CHECK_THROWS_AS(permute(p, {0, 1}), InvalidPermutation);
    CHECK_THROWS_AS(permute(src("int a; a = 1;"), {1, 0}), InvalidPermutation);
}

TEST_CASE("moving an assignment into a loop multiplies its term by the loop weight") {
    const SyntaxTree p = src("int a;\nint b;\nb = 0;\na = b + 1;");
    // a = b + 1 alone: term 2 at top level; each loop kind multiplies it
    const std::uint64_t base = escim_of(p, SiMode::Delta);
    for (LoopWrap k : {LoopWrap::While, LoopWrap::For, LoopWrap::DoWhile}) {
        const SyntaxTree q = wrap_in_loop(p, 3, 4, k);
        CHECK(resolves(q));
        CHECK(escim_of(q, SiMode::Delta) == base - 2 + 2 * 3);
    }
}

TEST_CASE("if (true) wrap and operator swap") {
    const SyntaxTree p = src("int a;\na = 1;\na = a + 2;");
    const SyntaxTree w = wrap_in_if_true(p, 1);
    CHECK(testing::main_of(w).body.body.size() == 2);
    CHECK(escim_of(w, SiMode::Delta) == 2 * (1 + 2));
    const auto s = swap_plus_minus(p);
    REQUIRE(s);
    CHECK(pretty_print(*s).find("a - 2") != std::string::npos);
    CHECK(escim_of(*s, SiMode::Delta) == escim_of(p, SiMode::Delta));
    CHECK_FALSE(swap_plus_minus(src("int a; a = 1;")).has_value());
}

TEST_CASE("corpus manifest") {
    CHECK(corpus().programs.size() >= 10);
    REQUIRE(corpus().equivalent.size() == 1);
    CHECK(corpus().equivalent[0].first == "sum_loop.mc");
    CHECK(corpus().equivalent[0].second == "sum_formula.mc");
}

TEST_CASE("property checks on the corpus alone") {
    const Sample s(corpus(), 1, 0);
    for (SiMode m : {SiMode::Delta, SiMode::MinMax, SiMode::Absolute}) {
        CAPTURE(m);
        const PropertyVerdict p1 = check_property("1", m, s);
        CHECK(p1.status == VerdictStatus::Witnessed);
        CHECK(p1.values.size() == 2);
        CHECK(p1.values[0] != p1.values[1]);
        const PropertyVerdict p4 = check_property("4", m, s);
        CHECK(p4.status == VerdictStatus::Witnessed);
        CHECK(p4.witness == std::vector<std::string>{"sum_loop.mc", "sum_formula.mc"});
        CHECK(check_property("8", m, s).status == VerdictStatus::HoldsOnSample);
        CHECK(check_property("5", m, s).status == VerdictStatus::HoldsOnSample);
    }
    CHECK_THROWS_AS(check_property("10", SiMode::Delta, s), ConfigError);
}

TEST_CASE("empty sample finds no witnesses") {
    MatrixConfig config;
    config.samples = 0;
    const VerdictTable t = run_matrix(config);
    for (const PropertyVerdict& v : t.verdicts) {
        CAPTURE(v.id);
        const bool existential = v.id != "2" && v.id != "5" && v.id != "8";
        if (existential) CHECK(v.status == VerdictStatus::NoWitnessFound);
        else CHECK(v.status == VerdictStatus::HoldsOnSample);
    }
}

TEST_CASE("matrix output is deterministic") {
    MatrixConfig config;
    config.corpus = corpus();
    config.samples = 40;
    config.seed = 9;
    const std::string a = verdicts_json(run_matrix(config)).dump();
    const std::string b = verdicts_json(run_matrix(config)).dump();
    CHECK(a == b);
    const std::string text = verdicts_text(run_matrix(config));
    CHECK(text.find("6a") != std::string::npos);
    CHECK(text.find("absolute") != std::string::npos);
}
