#include <doctest.h>

#include "escim/parser.hpp"
#include "support.hpp"

using namespace escim;

namespace {

std::unordered_set<NodeId> stmt_ids(const Analysis& a, std::initializer_list<std::size_t> top_level) {
    std::unordered_set<NodeId> ids;
    const auto& body = testing::main_of(a.tree).body.body;
    for (std::size_t i : top_level)
        for_each_stmt(body.at(i), [&](const Stmt& s) { ids.insert(s.id); });
    return ids;
}

unsigned sicn_max_named(const Analysis& a, const std::string& name, std::size_t nth = 0) {
    return sicn_max(testing::vars_named(a, name).at(nth), Region::whole(), a.ledger);
}

const char* kCounting = R"(void main() {
    int a;
    a = 1;
    a = a + 1;
    a += 2 * 3;
    print(a);
}
)";

}  // namespace

TEST_CASE("unit fixture deltas") {
    const auto a = testing::fixture("unit.mc");
    const auto& e = a.ledger.entries();
    REQUIRE(e.size() == 2);
    CHECK(e[0].occurrence.role == OccurrenceRole::Declaration);
    CHECK(e[0].delta == 0);
    CHECK(e[1].occurrence.role == OccurrenceRole::AssignmentTarget);
    CHECK(e[1].delta == 1);
    CHECK(sicn_max_named(a, "a") == 1);
}

TEST_CASE("deltas count the whole statement's operators") {
    const auto a = analyze_source(kCounting, "counting.mc");
    std::vector<unsigned> deltas, after;
    for (const LedgerEntry& e : a.ledger.entries()) {
        deltas.push_back(e.delta);
        after.push_back(e.sicn_after);
    }
    // decl, a=1, a=a+1 (target, read), a+=2*3, print(a)
    CHECK(deltas == std::vector<unsigned>{0, 1, 2, 0, 3, 0});
    CHECK(after == std::vector<unsigned>{0, 1, 3, 3, 6, 6});
}

TEST_CASE("SI modes on hand-picked regions") {
    const auto a = analyze_source(kCounting, "counting.mc");
    const Region whole = Region::whole();
    CHECK(si(whole, a.ledger, SiMode::Delta) == 6);
    CHECK(si(whole, a.ledger, SiMode::MinMax) == 6);
    CHECK(si(whole, a.ledger, SiMode::Absolute) == 6);

    const Region mid = Region::anchors(stmt_ids(a, {2, 3}));
    CHECK(si(mid, a.ledger, SiMode::Delta) == 5);
    CHECK(si(mid, a.ledger, SiMode::MinMax) == 3);
    CHECK(si(mid, a.ledger, SiMode::Absolute) == 6);

    const Region tail = Region::anchors(stmt_ids(a, {4}));
    CHECK(si(tail, a.ledger, SiMode::Delta) == 0);
    CHECK(si(tail, a.ledger, SiMode::MinMax) == 0);
    CHECK(si(tail, a.ledger, SiMode::Absolute) == 6);

    CHECK(sicn_min(testing::vars_named(a, "a")[0], mid, a.ledger) == 3);
    CHECK(si(Region::function("other"), a.ledger, SiMode::Absolute) == 0);
}

TEST_CASE("example 1 counts") {
    const auto a = testing::fixture("example1.mc");
    CHECK(icn_max("userInput", Region::whole(), a.ledger) == 1);
    CHECK(icn_max("square", Region::whole(), a.ledger) == 2);
    CHECK(info_icn(Region::whole(), a.ledger) == 3);
    CHECK(si(Region::whole(), a.ledger, SiMode::Delta) == 3);
}

TEST_CASE("example 2: SICN per scope, ICN across names") {
    const auto a = testing::fixture("example2.mc");
    // global: init 1, amount = amount * 2 adds 2
    CHECK(sicn_max_named(a, "amount", 0) == 3);
    // main local: init 1, amount = amount + 1 adds 2
    CHECK(sicn_max_named(a, "amount", 1) == 3);
    // inner block: init 1, amount-- adds 2
    CHECK(sicn_max_named(a, "amount", 2) == 3);
    CHECK(icn_max("amount", Region::whole(), a.ledger) == 9);
    CHECK(info_icn(Region::whole(), a.ledger) == 9);
}

TEST_CASE("example 3: global s and loop s") {
    const auto a = testing::fixture("example3.mc");
    const auto ss = testing::vars_named(a, "s");
    REQUIRE(ss.size() == 2);
    // global: init 1, s = s + key[i] adds 2
    CHECK(sicn_max(ss[0], Region::whole(), a.ledger) == 3);
    // loop s: init 1, s++ adds 2, s = s - 1 adds 2
    CHECK(sicn_max(ss[1], Region::whole(), a.ledger) == 5);
    // name-blind: 3 carried into the loop, then 1 + 2 + 2
    CHECK(icn_max("s", Region::whole(), a.ledger) == 8);
}

TEST_CASE("member assignments add to the record variable") {
    const auto a = analyze_source(
        "struct P { int x; int y; };\nvoid main() {\n    P p;\n    p.x = 1;\n    p.y = p.x + 2;\n}\n", "m.mc");
    CHECK(sicn_max_named(a, "p") == 3);
    std::vector<std::string> members;
    for (const LedgerEntry& e : a.ledger.entries())
        if (e.occurrence.member) members.push_back(*e.occurrence.member);
    CHECK(members == std::vector<std::string>{"x", "y", "x"});
}

TEST_CASE("increments, compound assignment and initializer operators") {
    const auto a = analyze_source("void main() {\n    int i = 2 * 3 + 1;\n    i++;\n    i--;\n    i -= 4;\n}\n", "i.mc");
    std::vector<unsigned> deltas;
    for (const LedgerEntry& e : a.ledger.entries()) deltas.push_back(e.delta);
    // decl 0, init 1+2, i++ 1+1, i-- 1+1, i -= 4 1+1
    CHECK(deltas == std::vector<unsigned>{0, 3, 2, 2, 2});
}

TEST_CASE("regions by function") {
    const auto a = analyze_source(
        "int g = 0;\nvoid f() {\n    g = g + 1;\n}\nvoid main() {\n    f();\n    g = 5;\n}\n", "r.mc");
    CHECK(si(Region::function("f"), a.ledger, SiMode::Delta) == 2);
    CHECK(si(Region::function("main"), a.ledger, SiMode::Delta) == 1);
    CHECK(si(Region::whole(), a.ledger, SiMode::Delta) == 4);
    CHECK(si(Region::function("main"), a.ledger, SiMode::Absolute) == 4);
}

TEST_CASE("ledger indexes") {
    const auto a = testing::fixture("example2.mc");
    CHECK(a.ledger.names() == std::vector<std::string>{"amount"});
    CHECK(a.ledger.variables().size() == 3);
    std::size_t total = 0;
    for (VarId v : a.ledger.variables()) total += a.ledger.of_variable(v).size();
    CHECK(total == a.ledger.of_name("amount").size());
    CHECK(total == a.ledger.entries().size());
}
