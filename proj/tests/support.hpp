#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "escim/analysis.hpp"

namespace escim {
inline std::ostream& operator<<(std::ostream& os, SiMode m) { return os << to_string(m); }
}  // namespace escim

namespace testing {

inline std::string corpus_path(const std::string& name) { return std::string(ESCIM_CORPUS_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline escim::Analysis fixture(const std::string& name) {
    return escim::analyze_source(read_text(corpus_path(name)), name);
}

inline std::uint64_t escim_value(const escim::Analysis& a, escim::SiMode mode = escim::SiMode::Delta,
                                 const escim::WeightTable& w = {}) {
    return escim::make_report(a, w, mode).escim;
}

// Variables of the analysis with this name, in declaration order.
inline std::vector<escim::VarId> vars_named(const escim::Analysis& a, const std::string& name) {
    return a.scopes.variables_named(name);
}

inline const escim::FunctionDef& main_of(const escim::SyntaxTree& t) { return *t.find_function("main"); }

}  // namespace testing
