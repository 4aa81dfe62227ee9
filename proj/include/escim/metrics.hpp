#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "escim/bcs.hpp"
#include "escim/ledger.hpp"

namespace escim {

/// Cognitive weight per BCS kind. Defaults follow the CFS weight table.
class WeightTable {
public:
    WeightTable();

    std::uint64_t operator[](BcsKind kind) const { return weights_.at(kind); }
    void set(BcsKind kind, std::uint64_t weight);
    const std::map<BcsKind, std::uint64_t>& entries() const { return weights_; }

    /// Keys are the to_string(BcsKind) spellings; missing keys keep their
    /// default. Throws ConfigError on unknown keys or weights below 1.
    static WeightTable from_json(std::string_view text);
    static WeightTable load(const std::string& path);

private:
    std::map<BcsKind, std::uint64_t> weights_;
};

/// Exact non-negative fraction in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;  // "a" or "a/b"
    bool operator==(const Rational&) const = default;
};

struct GranuleReport {
    std::string label;
    BcsKind kind = BcsKind::Linear;
    std::uint64_t weight = 1;
    std::uint64_t si = 0;  // for structured granules, the sum over descendant leaves
    std::uint64_t ancestor_product = 1;
    std::uint64_t calls = 0;
    std::uint64_t gotos = 0;
    std::uint64_t term = 0;
};

struct FunctionReport {
    std::string name;
    bool recursive = false;
    std::uint64_t escim = 0;
    std::uint64_t si_total = 0;
    std::vector<GranuleReport> granules;  // pre-order
    ErmExpression erm;
};

struct MetricsReport {
    std::string file;
    SiMode si_mode = SiMode::Delta;
    std::uint64_t loc = 0;
    std::uint64_t i_l = 0;
    std::uint64_t escim = 0;
    Rational efficiency;
    std::uint64_t cyclomatic = 0;
    WeightTable weights;
    std::vector<FunctionReport> functions;
};

/// Per-function ESCIM: leaf SI times the leaf's own weight, its ancestors'
/// weights, and the call and goto weights per occurrence in the leaf; a
/// recursive function's sum is multiplied by the recursion weight. Fills the
/// function and escim fields only. Throws InconsistentInput when a leaf
/// refers to statements the ledger's tree does not contain.
MetricsReport escim(const GranuleTree& granules, const OccurrenceLedger& ledger,
                    const WeightTable& weights, SiMode mode);

/// Lines that are neither blank nor comment-only. Throws EmptyProgram on 0.
std::uint64_t loc(std::string_view source);

Rational coding_efficiency(std::uint64_t escim, std::uint64_t loc);

/// Sum over functions of 1 + decision points (if, case label, while, do,
/// for, &&, ||).
std::uint64_t cyclomatic(const SyntaxTree& tree);

}  // namespace escim
