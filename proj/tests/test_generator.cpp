#include <doctest.h>

#include <map>

#include "escim/generator.hpp"
#include "escim/parser.hpp"
#include "support.hpp"

using namespace escim;

namespace {

int structured_depth(const Stmt& s) {
    int deepest = 0;
    auto visit = [&](const std::vector<Stmt>& list) {
        for (const Stmt& c : list) deepest = std::max(deepest, structured_depth(c));
    };
    visit(s.body);
    for (const SwitchArm& arm : s.arms) visit(arm.body);
    return deepest + (s.is_structured() ? 1 : 0);
}

// Statements a reader would count: blocks, empty statements and for-init
// declarations excluded.
std::size_t statement_count(const Stmt& s) {
    std::size_t n = (s.kind == StmtKind::Block || s.kind == StmtKind::Empty) ? 0 : 1;
    for (const Stmt& c : s.body) n += statement_count(c);
    for (const SwitchArm& arm : s.arms)
        for (const Stmt& c : arm.body) n += statement_count(c);
    return n;
}

}  // namespace

TEST_CASE("rng draws are bounded and seed-determined") {
    Rng a(5), b(5), c(6);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.below(7);
        CHECK(x < 7);
        CHECK(x == b.below(7));
        if (x != c.below(7)) differs = true;
    }
    CHECK(differs);
    // every residue shows up
    Rng d(1);
    std::map<std::uint64_t, int> seen;
    for (int i = 0; i < 700; ++i) ++seen[d.below(7)];
    CHECK(seen.size() == 7);
}

TEST_CASE("generated programs are sound") {
    int valid = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        CAPTURE(seed);
        const std::string text = generate_source(seed);
        try {
            const Analysis a = analyze_source(text, "gen.mc");
            make_report(a, {}, SiMode::Absolute);
            ++valid;
        } catch (const Error& e) {
            FAIL_CHECK(e.what() << "\n" << text);
        }
    }
    CHECK(valid == 1000);
}

TEST_CASE("generator respects its limits") {
    const GeneratorLimits limits;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        CAPTURE(seed);
        const SyntaxTree t = generate_program(seed);
        std::size_t statements = 0;
        for (const FunctionDef* f : t.functions()) {
            CHECK(structured_depth(f->body) <= limits.max_depth);
            statements += statement_count(f->body);
        }
        CHECK(statements <= static_cast<std::size_t>(limits.max_statements));
        CHECK(t.find_function("main") != nullptr);
    }
}

TEST_CASE("generation is a function of the seed") {
    CHECK(generate_source(1) == generate_source(1));
    CHECK(generate_source(1) != generate_source(2));
    GeneratorLimits small;
    small.max_depth = 1;
    small.max_statements = 5;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const SyntaxTree t = generate_program(seed, small);
        for (const FunctionDef* f : t.functions()) {
            if (f->name != "main") continue;
            CHECK(structured_depth(f->body) <= 1);
        }
    }
}

TEST_CASE("generated sample covers every statement kind") {
    std::map<StmtKind, int> kinds;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const SyntaxTree t = generate_program(seed);
        for (const FunctionDef* f : t.functions())
            for_each_stmt(f->body, [&](const Stmt& s) { ++kinds[s.kind]; });
    }
    for (StmtKind k : {StmtKind::Declaration, StmtKind::Expression, StmtKind::If, StmtKind::Switch, StmtKind::While,
                       StmtKind::DoWhile, StmtKind::For, StmtKind::Return, StmtKind::Break, StmtKind::Goto,
                       StmtKind::Labeled, StmtKind::Block}) {
        CAPTURE(to_string(k));
        CHECK(kinds[k] > 0);
    }
}
