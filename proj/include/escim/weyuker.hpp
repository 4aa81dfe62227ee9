#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "escim/analysis.hpp"

namespace escim {

// ---- program transforms ------------------------------------------------------

enum class ComposePolicy {
    Unify,       // same-named top-level locals of the two entry bodies become one variable
    FreshRename  // Q's clashing top-level locals are renamed apart
};

struct ComposeInfo {
    std::vector<std::string> unified_variables;
    std::vector<std::string> renamed_variables;
    std::vector<std::string> shared_items;   // identical globals/functions/records kept once
    std::vector<std::string> renamed_items;  // Q's conflicting functions/records
    std::vector<std::string> renamed_labels;
    bool deduplicated_function = false;
};

/// Sequential composition P;Q. Both `main` bodies are concatenated into one
/// `main`. Items are ordered P-before-main, Q-before-main, main, P-after-main,
/// Q-after-main. Identical functions and records are kept once; differing
/// ones of Q are renamed. A global Q redeclares is dropped and its
/// initializer becomes `::g = init;` at the start of Q's part of main. A
/// top-level declaration in Q's main that duplicates one in P's main is
/// replaced by a read of the variable followed by its initializer as an
/// assignment. Throws ComposeError on a type conflict, an aggregate
/// initializer that would need unifying, or when main takes parameters.
SyntaxTree compose(const SyntaxTree& p, const SyntaxTree& q,
                   ComposePolicy policy = ComposePolicy::Unify, ComposeInfo* info = nullptr);

/// Rename variables (not functions, records, members or labels). Throws
/// RenameCollision unless every occurrence keeps binding to the same
/// declaration.
SyntaxTree rename(const SyntaxTree& p, const std::map<std::string, std::string>& mapping);

/// Reorder main's top-level statements: result[i] = original[order[i]].
/// Throws InvalidPermutation if `order` is not a permutation or the result
/// no longer resolves.
SyntaxTree permute(const SyntaxTree& p, const std::vector<std::size_t>& order);

enum class LoopWrap { While, For, DoWhile };

/// Wrap main's top-level statements [first, last) in a loop that does not
/// change which statements run: `while (true) {...}` (an unconditional loop
/// in structure only), `for (;;) {...}` or `do {...} while (false);`.
SyntaxTree wrap_in_loop(const SyntaxTree& p, std::size_t first, std::size_t last, LoopWrap kind);

/// Wrap main's top-level statements [first, end) in `if (true) {...}`.
SyntaxTree wrap_in_if_true(const SyntaxTree& p, std::size_t first);

/// Swap the first binary `+` in main for `-`; nullopt when there is none.
std::optional<SyntaxTree> swap_plus_minus(const SyntaxTree& p);

// ---- property checking -------------------------------------------------------

struct Program {
    std::string name;
    SyntaxTree tree;
};

struct Corpus {
    std::vector<Program> programs;
    /// Pairs of program names known to compute the same function.
    std::vector<std::pair<std::string, std::string>> equivalent;
};

/// Load every .mc file of `dir` (sorted by name). When `manifest.json`
/// exists its `equivalent_pairs` are read as well.
Corpus load_corpus(const std::string& dir);

enum class VerdictStatus { Witnessed, HoldsOnSample, NoWitnessFound, Refuted };
std::string_view to_string(VerdictStatus status);

struct PropertyVerdict {
    std::string id;  // 1 2 3 4 5 6a 6b 7 8 9
    SiMode mode = SiMode::Delta;
    VerdictStatus status = VerdictStatus::NoWitnessFound;
    std::vector<std::string> witness;           // program names
    std::vector<std::string> witness_programs;  // the same programs pretty-printed
    std::vector<std::uint64_t> values; // ESCIM values backing the verdict
    std::string note;
    std::size_t checked = 0;
};

/// Programs the checks range over, with their analyses cached.
class Sample {
public:
    Sample(const Corpus& corpus, std::uint64_t seed, std::size_t generated,
           const WeightTable& weights = {});

    std::size_t size() const { return programs_.size(); }
    const Program& program(std::size_t i) const { return programs_[i]; }
    const Analysis& analysis(std::size_t i) const { return analyses_[i]; }
    std::uint64_t escim(std::size_t i, SiMode mode) const;
    const WeightTable& weights() const { return weights_; }
    const Corpus& corpus() const { return corpus_; }
    std::uint64_t seed() const { return seed_; }

private:
    Corpus corpus_;
    std::uint64_t seed_;
    WeightTable weights_;
    std::vector<Program> programs_;
    std::vector<Analysis> analyses_;
};

/// Property ids in report order.
const std::vector<std::string>& property_ids();

PropertyVerdict check_property(const std::string& id, SiMode mode, const Sample& sample);

struct MatrixConfig {
    Corpus corpus;
    std::uint64_t seed = 42;
    std::size_t samples = 500;
    std::vector<SiMode> modes{SiMode::Delta, SiMode::MinMax, SiMode::Absolute};
    WeightTable weights;
};

struct VerdictTable {
    std::uint64_t seed = 0;
    std::size_t corpus_programs = 0;
    std::size_t generated_programs = 0;
    std::vector<SiMode> modes;
    std::vector<PropertyVerdict> verdicts;  // property-major, then mode

    const PropertyVerdict* find(const std::string& id, SiMode mode) const;
};

VerdictTable run_matrix(const MatrixConfig& config);

nlohmann::ordered_json verdicts_json(const VerdictTable& table);
std::string verdicts_text(const VerdictTable& table);

/// ESCIM of a tree analyzed from scratch.
std::uint64_t escim_of(const SyntaxTree& tree, SiMode mode, const WeightTable& weights = {});

}  // namespace escim
