// Property suites over generated programs. Each case draws its own choices
// from a seeded Rng so failures reproduce from the CAPTURE output.

#include <doctest.h>

#include <numeric>
#include <set>

#include "escim/generator.hpp"
#include "escim/parser.hpp"
#include "escim/weyuker.hpp"
#include "support.hpp"

using namespace escim;

namespace {

constexpr SiMode kModes[] = {SiMode::Delta, SiMode::MinMax, SiMode::Absolute};

std::unordered_set<NodeId> anchors_of(const SyntaxTree& t, std::size_t first, std::size_t last) {
    std::unordered_set<NodeId> ids;
    const auto& body = testing::main_of(t).body.body;
    for (std::size_t i = first; i < last; ++i) for_each_stmt(body[i], [&](const Stmt& s) { ids.insert(s.id); });
    return ids;
}

std::size_t granule_count(const std::vector<Granule>& gs) {
    std::size_t n = 0;
    for (const Granule& g : gs) n += 1 + granule_count(g.children);
    return n;
}

const FunctionGranules& main_granules(const Analysis& a) {
    for (const FunctionGranules& f : a.granules.functions)
        if (f.name == "main") return f;
    throw std::runtime_error("no main");
}

void collect_leaves(const std::vector<Granule>& gs, std::vector<const Granule*>& out) {
    for (const Granule& g : gs) {
        if (g.is_leaf()) out.push_back(&g);
        collect_leaves(g.children, out);
    }
}

}  // namespace

TEST_CASE("rename invariance on 200 generated programs") {
    Rng rng(2024);
    for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
        CAPTURE(seed);
        const SyntaxTree p = generate_program(seed);
        const Analysis a = analyze_tree(p);
        // a random bijection on the variable names, with fresh spellings
        std::vector<std::string> names = a.ledger.names();
        for (const ScopedVariable& v : a.scopes.variables)
            if (std::find(names.begin(), names.end(), v.name) == names.end()) names.push_back(v.name);
        std::vector<std::string> shuffled = names;
        for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        std::map<std::string, std::string> mapping;
        for (std::size_t i = 0; i < names.size(); ++i) mapping[names[i]] = "r" + std::to_string(i) + "_" + shuffled[i];

        const SyntaxTree q = rename(p, mapping);
        const Analysis b = analyze_tree(q);
        for (SiMode m : kModes) {
            CAPTURE(m);
            const MetricsReport ra = make_report(a, {}, m);
            const MetricsReport rb = make_report(b, {}, m);
            CHECK(ra.escim == rb.escim);
            CHECK(si(Region::whole(), a.ledger, m) == si(Region::whole(), b.ledger, m));
            CHECK(ra.i_l == rb.i_l);
            CHECK(ra.loc == rb.loc);
        }
    }
}

TEST_CASE("delta SI is additive over 200 split points") {
    Rng rng(77);
    int cases = 0;
    for (std::uint64_t seed = 2000; cases < 200; ++seed) {
        const SyntaxTree p = generate_program(seed);
        const std::size_t n = testing::main_of(p).body.body.size();
        if (n < 2) continue;
        const Analysis a = analyze_tree(p);
        const std::size_t k = 1 + rng.below(n - 1);
        CAPTURE(seed);
        CAPTURE(k);
        const unsigned left = si(Region::anchors(anchors_of(a.tree, 0, k)), a.ledger, SiMode::Delta);
        const unsigned right = si(Region::anchors(anchors_of(a.tree, k, n)), a.ledger, SiMode::Delta);
        CHECK(left + right == si(Region::function("main"), a.ledger, SiMode::Delta));

        // independent oracle: sum of deltas of occurrences in main
        unsigned deltas = 0;
        for (const LedgerEntry& e : a.ledger.entries())
            if (e.occurrence.function == "main") deltas += e.delta;
        CHECK(left + right == deltas);
        ++cases;
    }
}

TEST_CASE("minmax <= delta <= absolute on 200 regions") {
    Rng rng(31);
    int cases = 0;
    for (std::uint64_t seed = 3000; cases < 200; ++seed) {
        const SyntaxTree p = generate_program(seed);
        const std::size_t n = testing::main_of(p).body.body.size();
        if (n == 0) continue;
        const Analysis a = analyze_tree(p);
        std::vector<Region> regions;
        // a contiguous run of top-level statements
        const std::size_t i = rng.below(n);
        const std::size_t j = i + 1 + rng.below(n - i);
        regions.push_back(Region::anchors(anchors_of(a.tree, i, j)));
        // and one leaf granule
        std::vector<const Granule*> leaves;
        collect_leaves(main_granules(a).roots, leaves);
        if (!leaves.empty()) {
            const Granule* g = leaves[rng.below(leaves.size())];
            regions.push_back(Region::anchors({g->anchors.begin(), g->anchors.end()}));
        }
        CAPTURE(seed);
        for (const Region& r : regions) {
            const unsigned mm = si(r, a.ledger, SiMode::MinMax);
            const unsigned d = si(r, a.ledger, SiMode::Delta);
            const unsigned ab = si(r, a.ledger, SiMode::Absolute);
            CHECK(mm <= d);
            CHECK(d <= ab);
            ++cases;
        }
    }
}

TEST_CASE("wrapping a leaf in a loop multiplies its term by the loop weight, 100 cases") {
    Rng rng(5);
    const WeightTable w;
    const std::pair<LoopWrap, BcsKind> kinds[] = {
        {LoopWrap::While, BcsKind::WhileLoop}, {LoopWrap::For, BcsKind::ForLoop}, {LoopWrap::DoWhile, BcsKind::DoWhileLoop}};
    int cases = 0;
    for (std::uint64_t seed = 4000; cases < 100 && seed < 8000; ++seed) {
        const SyntaxTree p = generate_program(seed);
        const Analysis a = analyze_tree(p);
        const auto& body = testing::main_of(a.tree).body.body;
        const auto& roots = main_granules(a).roots;
        // top-level leaves that hold statements
        std::vector<std::size_t> candidates;
        for (std::size_t g = 0; g < roots.size(); ++g)
            if (roots[g].is_leaf() && !roots[g].stmts.empty()) candidates.push_back(g);
        if (candidates.empty()) continue;
        const std::size_t g = candidates[rng.below(candidates.size())];
        const std::unordered_set<NodeId> leaf_ids(roots[g].anchors.begin(), roots[g].anchors.end());

        // the top-level statements the leaf covers
        std::size_t first = body.size(), last = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            bool covered = false;
            for_each_stmt(body[i], [&](const Stmt& s) { covered = covered || leaf_ids.contains(s.id); });
            if (covered) {
                first = std::min(first, i);
                last = i + 1;
            }
        }
        REQUIRE(first < last);
        const auto [wrap, kind] = kinds[rng.below(3)];
        const SyntaxTree q = wrap_in_loop(p, first, last, wrap);
        Analysis b;
        try {
            b = analyze_tree(q);
        } catch (const UnresolvedName&) {
            continue;  // a declaration in the run is used after it
        }
        // the wrap must add exactly the loop granule
        if (granule_count(main_granules(b).roots) != granule_count(roots) + 1) continue;
        CAPTURE(seed);
        CAPTURE(first);
        CAPTURE(last);
        for (SiMode m : kModes) {
            CAPTURE(m);
            const MetricsReport ra = make_report(a, w, m);
            const MetricsReport rb = make_report(b, w, m);
            const FunctionReport* fa = nullptr;
            const FunctionReport* fb = nullptr;
            for (const auto& f : ra.functions) if (f.name == "main") fa = &f;
            for (const auto& f : rb.functions) if (f.name == "main") fb = &f;
            const std::string label = format_label({static_cast<int>(g) + 1});
            const std::string inner = format_label({static_cast<int>(g) + 1, 1});
            std::uint64_t before = 0, after = 0;
            for (const auto& gr : fa->granules) if (gr.label == label) before = gr.term;
            for (const auto& gr : fb->granules) if (gr.label == inner) after = gr.term;
            CHECK(after == before * w[kind]);
            // main is never recursive, so the whole program changes by the same amount
            CHECK(rb.escim == ra.escim + (w[kind] - 1) * before);
        }
        ++cases;
    }
    CHECK(cases == 100);
}
