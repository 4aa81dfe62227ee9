#include "escim/generator.hpp"

#include <array>
#include <vector>

#include "escim/parser.hpp"

namespace escim {

std::uint64_t Rng::below(std::uint64_t n) {
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

namespace {

enum class VarType { Int, Bool, Array, Record };

struct Var {
    std::string name;
    VarType type;
};

enum class StmtChoice {
    Decl, Assign, Compound, IncDec, Print, Call, Goto, Break,
    If, While, For, DoWhile, Switch, Block,
};

// Relative frequencies; fixed constants, not tuned.
constexpr std::array<std::pair<StmtChoice, unsigned>, 14> kStmtWeights{{
    {StmtChoice::Decl, 18},   {StmtChoice::Assign, 24}, {StmtChoice::Compound, 7},
    {StmtChoice::IncDec, 7},  {StmtChoice::Print, 7},   {StmtChoice::Call, 5},
    {StmtChoice::Goto, 1},    {StmtChoice::Break, 2},   {StmtChoice::If, 9},
    {StmtChoice::While, 5},   {StmtChoice::For, 5},     {StmtChoice::DoWhile, 3},
    {StmtChoice::Switch, 3},  {StmtChoice::Block, 3},
}};

bool is_structured(StmtChoice c) { return c >= StmtChoice::If; }

class Generator {
public:
    Generator(std::uint64_t seed, const GeneratorLimits& limits)
        : rng_(seed), limits_(limits), seed_(seed) {}

    std::string run() {
        budget_ = 3 + static_cast<int>(rng_.below(static_cast<std::uint64_t>(
                          std::max(1, limits_.max_statements - 2))));
        scopes_.emplace_back();

        const int globals = static_cast<int>(rng_.below(3));
        for (int i = 0; i < globals; ++i) {
            const std::string name = "g" + std::to_string(i);
            out_ += "int " + name + ";\n";
            scopes_[0].push_back({name, VarType::Int});
        }
        use_record_ = rng_.chance(20);
        if (use_record_) out_ += "\nstruct Pair {\n    int x;\n    int y;\n};\n";

        std::string helper_text;
        if (rng_.chance(40)) {
            helper_ = "h" + std::to_string(seed_);
            helper_text = helper();
        }
        const bool helper_first = rng_.chance(70);
        if (!helper_text.empty() && helper_first) out_ += '\n' + helper_text;

        use_goto_ = rng_.chance(15);
        if (use_goto_) --budget_;  // the trailing label
        out_ += "\nvoid main() {\n";
        scopes_.emplace_back();
        while (budget_ > 0) statement(0, 1);
        if (use_goto_) out_ += "    done: ;\n";
        scopes_.pop_back();
        out_ += "}\n";

        if (!helper_text.empty() && !helper_first) out_ += '\n' + helper_text;
        return out_;
    }

private:
    std::string helper() {
        std::string h = "int " + helper_ + "(int n) {\n";
        switch (rng_.below(3)) {
            case 0:
                h += "    return n * 2 + 1;\n";
                budget_ -= 1;
                break;
            case 1:
                h += "    int t = 0;\n    while (t < n) {\n        t = t + 1;\n    }\n    return t;\n";
                budget_ -= 4;
                break;
            default:
                h += "    if (n <= 0)\n        return 0;\n    return " + helper_ + "(n - 1) + 1;\n";
                budget_ -= 3;
                break;
        }
        if (!scopes_[0].empty() && rng_.chance(50)) {
            h.insert(h.find('\n') + 1, "    " + scopes_[0][0].name + " = " + scopes_[0][0].name + " + n;\n");
            budget_ -= 1;
        }
        return h + "}\n";
    }

    static std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 4, ' '); }

    std::vector<const Var*> visible(VarType type) const {
        std::vector<const Var*> out;
        // Innermost declaration of each name only.
        std::vector<std::string> seen;
        for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope) {
            for (auto v = scope->rbegin(); v != scope->rend(); ++v) {
                if (std::find(seen.begin(), seen.end(), v->name) != seen.end()) continue;
                seen.push_back(v->name);
                if (v->type == type) out.push_back(&*v);
            }
        }
        return out;
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[rng_.below(items.size())];
    }

    std::string int_atom() {
        const auto ints = visible(VarType::Int);
        const auto arrays = visible(VarType::Array);
        const auto records = visible(VarType::Record);
        const unsigned r = static_cast<unsigned>(rng_.below(100));
        if (r < 40 && !ints.empty()) return pick(ints)->name;
        if (r < 48 && !arrays.empty()) return pick(arrays)->name + '[' + std::to_string(rng_.below(8)) + ']';
        if (r < 54 && !records.empty()) return pick(records)->name + (rng_.chance(50) ? ".x" : ".y");
        if (r < 60) return "read()";
        if (r < 68 && !helper_.empty()) return helper_ + '(' + int_expr(2) + ')';
        if (r < 72 && !ints.empty()) return "-" + pick(ints)->name;
        return std::to_string(rng_.below(10));
    }

    std::string int_expr(int depth) {
        if (depth >= 2 || rng_.chance(45)) return int_atom();
        static constexpr std::array<const char*, 5> ops{"+", "-", "*", "/", "%"};
        std::string rhs = int_expr(depth + 1);
        if (rhs.find(' ') != std::string::npos) rhs = '(' + rhs + ')';
        return int_atom() + ' ' + ops[rng_.below(ops.size())] + ' ' + rhs;
    }

    std::string condition(int depth = 0) {
        const auto bools = visible(VarType::Bool);
        const unsigned r = static_cast<unsigned>(rng_.below(100));
        if (r < 12 && !bools.empty()) return (rng_.chance(30) ? "!" : "") + pick(bools)->name;
        if (r < 20 && depth == 0)
            return condition(1) + (rng_.chance(50) ? " && " : " || ") + condition(1);
        if (r < 24) return "true";
        static constexpr std::array<const char*, 6> rel{"<", ">", "<=", ">=", "==", "!="};
        return int_atom() + ' ' + rel[rng_.below(rel.size())] + ' ' + int_atom();
    }

    StmtChoice choose(int depth) {
        unsigned total = 0;
        for (const auto& [c, w] : kStmtWeights) total += w;
        for (;;) {
            unsigned r = static_cast<unsigned>(rng_.below(total));
            StmtChoice pickd = StmtChoice::Decl;
            for (const auto& [c, w] : kStmtWeights) {
                if (r < w) {
                    pickd = c;
                    break;
                }
                r -= w;
            }
            if (is_structured(pickd) && (depth >= limits_.max_depth || budget_ < 2)) continue;
            if (pickd == StmtChoice::Call && helper_.empty()) continue;
            if (pickd == StmtChoice::Goto && !use_goto_) continue;
            if (pickd == StmtChoice::Break && loops_ == 0) continue;
            return pickd;
        }
    }

    void body(int depth, int indent, bool new_scope = true) {
        if (new_scope) scopes_.emplace_back();
        const int n = 1 + static_cast<int>(rng_.below(3));
        for (int i = 0; i < n && budget_ > 0; ++i) statement(depth, indent);
        if (new_scope) scopes_.pop_back();
    }

    bool declared_here(const std::string& name) const {
        for (const Var& v : scopes_.back())
            if (v.name == name) return true;
        return false;
    }

    void declaration(int indent) {
        VarType type = VarType::Int;
        const unsigned r = static_cast<unsigned>(rng_.below(100));
        if (r < 10) type = VarType::Bool;
        else if (r < 20) type = VarType::Array;
        else if (r < 30 && use_record_) type = VarType::Record;
        static const std::array<std::vector<std::string>, 4> pools{{
            {"v0", "v1", "v2", "v3", "v4", "v5"}, {"f0", "f1"}, {"a0", "a1"}, {"p0", "p1"}}};
        std::vector<std::string> free;
        for (const std::string& n : pools[static_cast<std::size_t>(type)])
            if (!declared_here(n)) free.push_back(n);
        if (free.empty()) {
            assignment(indent);
            return;
        }
        const std::string name = pick(free);
        std::string line = pad(indent);
        switch (type) {
            case VarType::Int:
                line += "int " + name;
                if (rng_.chance(60)) line += " = " + int_expr(0);
                break;
            case VarType::Bool:
                line += "bool " + name + " = " + condition();
                break;
            case VarType::Array:
                line += "int " + name + "[8]";
                break;
            case VarType::Record:
                line += "Pair " + name;
                break;
        }
        out_ += line + ";\n";
        scopes_.back().push_back({name, type});
    }

    void assignment(int indent) {
        const auto ints = visible(VarType::Int);
        const auto bools = visible(VarType::Bool);
        const auto arrays = visible(VarType::Array);
        const auto records = visible(VarType::Record);
        const unsigned r = static_cast<unsigned>(rng_.below(100));
        std::string target;
        if (r < 12 && !arrays.empty()) {
            target = pick(arrays)->name + '[' + int_atom() + ']';
        } else if (r < 20 && !records.empty()) {
            target = pick(records)->name + (rng_.chance(50) ? ".x" : ".y");
        } else if (r < 26 && !bools.empty()) {
            out_ += pad(indent) + pick(bools)->name + " = " + condition() + ";\n";
            return;
        } else if (r < 32 && !scopes_[0].empty()) {
            target = "::" + pick(scopes_[0]).name;
        } else if (!ints.empty()) {
            target = pick(ints)->name;
        } else {
            out_ += pad(indent) + "print(" + int_expr(0) + ");\n";
            return;
        }
        out_ += pad(indent) + target + " = " + int_expr(0) + ";\n";
    }

    void statement(int depth, int indent) {
        --budget_;
        const std::string p = pad(indent);
        const auto ints = visible(VarType::Int);
        switch (choose(depth)) {
            case StmtChoice::Decl:
                declaration(indent);
                return;
            case StmtChoice::Assign:
                assignment(indent);
                return;
            case StmtChoice::Compound:
                if (ints.empty()) break;
                out_ += p + pick(ints)->name + (rng_.chance(50) ? " += " : " -= ") + int_expr(1) + ";\n";
                return;
            case StmtChoice::IncDec:
                if (ints.empty()) break;
                out_ += p + pick(ints)->name + (rng_.chance(50) ? "++" : "--") + ";\n";
                return;
            case StmtChoice::Print:
                if (rng_.chance(20)) out_ += p + "print(\"value\");\n";
                else out_ += p + "print(" + int_expr(0) + ");\n";
                return;
            case StmtChoice::Call:
                if (!ints.empty() && rng_.chance(60))
                    out_ += p + pick(ints)->name + " = " + helper_ + '(' + int_expr(1) + ");\n";
                else
                    out_ += p + "print(" + helper_ + '(' + int_expr(1) + "));\n";
                return;
            case StmtChoice::Goto:
                out_ += p + "goto done;\n";
                return;
            case StmtChoice::Break:
                out_ += p + "break;\n";
                return;
            case StmtChoice::If:
                out_ += p + "if (" + condition() + ") {\n";
                body(depth + 1, indent + 1);
                if (budget_ > 0 && rng_.chance(40)) {
                    out_ += p + "} else {\n";
                    body(depth + 1, indent + 1);
                }
                out_ += p + "}\n";
                return;
            case StmtChoice::While:
                out_ += p + "while (" + condition() + ") {\n";
                ++loops_;
                body(depth + 1, indent + 1);
                --loops_;
                out_ += p + "}\n";
                return;
            case StmtChoice::For: {
                const std::string i = "i" + std::to_string(depth);
                scopes_.emplace_back();
                if (!ints.empty() && rng_.chance(25)) {
                    const std::string v = pick(ints)->name;
                    out_ += p + "for (" + v + " = 0; " + v + " < " + int_atom() + "; " + v + " = " + v + " + 1) {\n";
                } else {
                    out_ += p + "for (int " + i + " = 0; " + i + " < " + std::to_string(1 + rng_.below(9)) +
                            "; " + i + "++) {\n";
                    scopes_.back().push_back({i, VarType::Int});
                }
                ++loops_;
                body(depth + 1, indent + 1);
                --loops_;
                scopes_.pop_back();
                out_ += p + "}\n";
                return;
            }
            case StmtChoice::DoWhile:
                out_ += p + "do {\n";
                ++loops_;
                body(depth + 1, indent + 1);
                --loops_;
                out_ += p + "} while (" + condition() + ");\n";
                return;
            case StmtChoice::Switch: {
                out_ += p + "switch (" + int_atom() + ") {\n";
                scopes_.emplace_back();
                const int arms = 1 + static_cast<int>(rng_.below(3));
                ++loops_;  // break is legal inside a switch
                for (int a = 0; a < arms; ++a) {
                    out_ += p + "case " + std::to_string(a) + ":\n";
                    if (budget_ > 0) body(depth + 1, indent + 1, false);
                }
                if (rng_.chance(50)) {
                    out_ += p + "default:\n";
                    if (budget_ > 0) body(depth + 1, indent + 1, false);
                }
                --loops_;
                scopes_.pop_back();
                out_ += p + "}\n";
                return;
            }
            case StmtChoice::Block:
                out_ += p + "{\n";
                body(depth, indent + 1);
                out_ += p + "}\n";
                return;
        }
        // Nothing to operate on yet.
        declaration(indent);
    }

    Rng rng_;
    GeneratorLimits limits_;
    std::uint64_t seed_;
    int budget_ = 0;
    int loops_ = 0;
    bool use_record_ = false;
    bool use_goto_ = false;
    std::string helper_;
    std::vector<std::vector<Var>> scopes_;
    std::string out_;
};

}  // namespace

std::string generate_source(std::uint64_t seed, const GeneratorLimits& limits) {
    return Generator(seed, limits).run();
}

SyntaxTree generate_program(std::uint64_t seed, const GeneratorLimits& limits) {
    return parse_source(generate_source(seed, limits), "gen:" + std::to_string(seed));
}

}  // namespace escim
