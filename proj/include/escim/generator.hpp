#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "escim/ast.hpp"

namespace escim {

struct GeneratorLimits {
    int max_depth = 4;        // nesting of structured statements
    int max_statements = 30;  // every statement counts, nested ones included
};

/// Random MiniC program with a `void main()` entry. Output is a pure
/// function of the seed and limits. Globals, the optional record type and
/// the `done` label use fixed spellings (globals are uninitialized) so independently generated programs
/// compose cleanly; the helper function name carries a seed-derived tag.
std::string generate_source(std::uint64_t seed, const GeneratorLimits& limits = {});

/// generate_source followed by parse_source.
SyntaxTree generate_program(std::uint64_t seed, const GeneratorLimits& limits = {});

/// mt19937_64 with bounded draws done by rejection, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 engine_;
};

}  // namespace escim
