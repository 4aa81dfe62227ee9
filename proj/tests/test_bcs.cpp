#include <doctest.h>

#include <filesystem>
#include <set>

#include "escim/generator.hpp"
#include "escim/parser.hpp"
#include "support.hpp"

using namespace escim;

namespace {

const FunctionGranules& main_granules(const Analysis& a) {
    for (const FunctionGranules& f : a.granules.functions)
        if (f.name == "main") return f;
    throw std::runtime_error("no main");
}

// label -> granule, pre-order
void index_labels(const std::vector<Granule>& gs, std::map<std::string, const Granule*>& out) {
    for (const Granule& g : gs) {
        out[g.label()] = &g;
        index_labels(g.children, out);
    }
}

std::set<std::string> rendered(const ErmExpression& erm) {
    std::set<std::string> out;
    for (const ErmFact& f : erm) out.insert(render_fact(f));
    return out;
}

// Parent/child and within-arm successor edges read straight off the tree.
void expected_edges(const std::vector<Granule>& siblings, std::set<std::string>& out) {
    for (std::size_t i = 0; i < siblings.size(); ++i) {
        if (siblings[i].relation_to_next == SiblingRelation::Sequence)
            out.insert(siblings[i].label() + " -> " + siblings[i + 1].label());
        for (const Granule& c : siblings[i].children) out.insert(siblings[i].label() + " > " + c.label());
        expected_edges(siblings[i].children, out);
    }
}

}  // namespace

TEST_CASE("labels") {
    CHECK(format_label({1}) == "G1");
    CHECK(format_label({2, 1}) == "G(2,1)");
    CHECK(format_label({2, 2, 1}) == "G(2,2,1)");
}

TEST_CASE("classification") {
    const SyntaxTree t = parse_source(
        "void main() { int a; a = 1; if (a) a = 2; switch (a) { default: ; } while (a) a--; do a++; while (a);"
        " for (;;) break; l: a = 3; goto l; }");
    const auto& b = testing::main_of(t).body.body;
    CHECK(classify_bcs(b[0]) == BcsKind::Linear);
    CHECK(classify_bcs(b[1]) == BcsKind::Linear);
    CHECK(classify_bcs(b[2]) == BcsKind::IfBranch);
    CHECK(classify_bcs(b[3]) == BcsKind::CaseBranch);
    CHECK(classify_bcs(b[4]) == BcsKind::WhileLoop);
    CHECK(classify_bcs(b[5]) == BcsKind::DoWhileLoop);
    CHECK(classify_bcs(b[6]) == BcsKind::ForLoop);
    CHECK(classify_bcs(b[7]) == BcsKind::Linear);
    CHECK(classify_bcs(b[8]) == BcsKind::Goto);
    for (BcsKind k : kAllBcsKinds) CHECK(parse_bcs_kind(to_string(k)) == k);
    CHECK_FALSE(parse_bcs_kind("loop").has_value());
}

TEST_CASE("example 6 hierarchy") {
    const auto a = testing::fixture("example6.mc");
    const FunctionGranules& m = main_granules(a);
    REQUIRE(m.roots.size() == 2);
    CHECK(m.roots[0].is_leaf());
    CHECK(m.roots[0].stmts.size() == 6);
    const Granule& loop = m.roots[1];
    CHECK(loop.kind == BcsKind::WhileLoop);
    REQUIRE(loop.children.size() == 3);
    CHECK(loop.children[0].is_leaf());
    CHECK(loop.children[1].kind == BcsKind::IfBranch);
    CHECK(loop.children[2].is_leaf());
    REQUIRE(loop.children[1].children.size() == 1);
    const Granule& brk = loop.children[1].children[0];
    CHECK(brk.label() == "G(2,2,1)");
    REQUIRE(brk.stmts.size() == 1);

    const std::set<std::string> want{"G1 -> G2",         "G2 > G(2,1)",      "G2 > G(2,2)",
                                     "G2 > G(2,3)",      "G(2,1) -> G(2,2)", "G(2,2) -> G(2,3)",
                                     "G(2,2) > G(2,2,1)"};
    CHECK(rendered(serialize_erm(m)) == want);
}

TEST_CASE("example 4 ERM in emit order") {
    const auto a = testing::fixture("example4.mc");
    const std::vector<std::string> want{"G1 -> G2",         "G1 > G(1,1)",      "G1 > G(1,2)",
                                        "G1 > G(1,3)",      "G(1,1) -> G(1,2)", "G(1,2) -> G(1,3)",
                                        "G(1,2) > G(1,2,1)", "G2 > G(2,1)"};
    std::vector<std::string> got;
    for (const ErmFact& f : serialize_erm(main_granules(a))) got.push_back(render_fact(f));
    CHECK(got == want);
}

TEST_CASE("arms are siblings without sequence; empty arm gets an empty leaf") {
    const auto a = analyze_source(
        "void main() {\n    int a = 0;\n    if (a > 0) {\n    } else {\n        a = 1;\n    }\n}\n", "arms.mc");
    const Granule& g = main_granules(a).roots.at(1);
    REQUIRE(g.children.size() == 2);
    CHECK(g.children[0].stmts.empty());
    // the condition anchors to the empty then-leaf
    CHECK(g.children[0].anchors == std::vector<NodeId>{testing::main_of(a.tree).body.body[1].id});
    CHECK(g.children[0].relation_to_next == SiblingRelation::None);
    CHECK_FALSE(rendered(serialize_erm(main_granules(a))).contains("G(2,1) -> G(2,2)"));
}

TEST_CASE("do-while condition attaches to the last leaf") {
    const auto a = analyze_source(
        "void main() {\n    int a = 0;\n    do {\n        a = a + 1;\n        while (a < 3) a++;\n    } while (a < 9);\n}\n",
        "dw.mc");
    const Granule& loop = main_granules(a).roots.at(1);
    REQUIRE(loop.children.size() == 3);
    const Granule& last = loop.children.back();
    CHECK(last.stmts.empty());
    CHECK(last.anchors == std::vector<NodeId>{loop.node});
    // 1 (init) + 2·3 (a = a + 1) + 2·3·3 (a++ in the while)
    CHECK(testing::escim_value(a) == 1 + 6 + 18);
}

TEST_CASE("switch arms each form a child list") {
    const auto a = testing::fixture("switch.mc");
    const Granule& sw = main_granules(a).roots.at(1);
    CHECK(sw.kind == BcsKind::CaseBranch);
    CHECK(sw.children.size() == 4);
    for (const Granule& c : sw.children) CHECK(c.is_leaf());
}

TEST_CASE("ERM edges are exactly the tree's edges and round-trip") {
    std::vector<Analysis> programs;
    for (const auto& e : std::filesystem::directory_iterator(ESCIM_CORPUS_DIR))
        if (e.path().extension() == ".mc") programs.push_back(testing::fixture(e.path().filename().string()));
    for (std::uint64_t seed = 1; seed <= 200; ++seed) programs.push_back(analyze_tree(generate_program(seed)));
    for (const Analysis& a : programs) {
        for (const FunctionGranules& f : a.granules.functions) {
            CAPTURE(a.tree.file);
            CAPTURE(f.name);
            const ErmExpression erm = serialize_erm(f);
            std::set<std::string> want;
            expected_edges(f.roots, want);
            CHECK(rendered(erm) == want);
            CHECK(rendered(erm).size() == erm.size());
            CHECK(parse_erm(render_erm(erm)) == erm);
        }
    }
}

TEST_CASE("ERM parse errors") {
    CHECK(parse_erm("").empty());
    CHECK(parse_erm("G1 -> G2\n\nG2 > G(2,1)\n").size() == 2);
    CHECK_THROWS_AS(parse_erm("G1 => G2"), ErmSyntaxError);
    CHECK_THROWS_AS(parse_erm("G1 -> G(2)"), ErmSyntaxError);
    CHECK_THROWS_AS(parse_erm("G1 -> H2"), ErmSyntaxError);
    try {
        parse_erm("G1 -> G2\nbad");
        FAIL("no throw");
    } catch (const ErmSyntaxError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("leaf call and goto counts") {
    const auto a = analyze_source(
        "int f(int x) { return x; }\nvoid main() {\n    int a = f(1) + f(2);\n    print(a);\n    goto e;\n    e: ;\n}\n",
        "c.mc");
    const Granule& leaf = main_granules(a).roots.at(0);
    CHECK(leaf.calls == 2);
    CHECK(leaf.gotos == 1);
}

namespace {

// Random call graph over n functions, as MiniC source.
std::string call_graph_source(Rng& rng, int n, std::vector<std::vector<bool>>& edge) {
    edge.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    std::string src;
    for (int i = 0; i < n; ++i) {
        src += "void f" + std::to_string(i) + "() {\n";
        for (int j = 0; j < n; ++j) {
            if (rng.chance(18)) {
                edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
                src += "    f" + std::to_string(j) + "();\n";
            }
        }
        src += "}\n";
    }
    return src + "void main() {\n    f0();\n}\n";
}

}  // namespace

TEST_CASE("recursion detection agrees with reachability") {
    Rng rng(7);
    for (int round = 0; round < 300; ++round) {
        const int n = 1 + static_cast<int>(rng.below(8));
        std::vector<std::vector<bool>> edge;
        const SyntaxTree t = parse_source(call_graph_source(rng, n, edge));
        // transitive closure
        auto reach = edge;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (reach[i][k] && reach[k][j]) reach[i][j] = true;
        std::set<std::string> want;
        for (int i = 0; i < n; ++i)
            if (reach[i][i]) want.insert("f" + std::to_string(i));
        CAPTURE(round);
        CHECK(detect_recursion(t) == want);
    }
}

TEST_CASE("recursion in the fixtures") {
    CHECK(detect_recursion(testing::fixture("example1.mc").tree).empty());
    CHECK(detect_recursion(testing::fixture("recursion.mc").tree) == std::set<std::string>{"fact", "is_even", "is_odd"});
}
