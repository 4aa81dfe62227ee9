// escim: command-line front end for the analysis library.
//
//   escim analyze FILE... [--corpus] [--format text|json] [--si-mode MODE]
//                 [--weights FILE] [--emit metrics,erm,ledger,granules]
//   escim weyuker [--si-mode MODE] [--seed N] [--samples N] [--corpus DIR] [--format ...]
//   escim generate [--seed N] [--count N]
//
// Exit status: 0 success, 1 analysis diagnostics, 2 I/O or usage errors.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "escim/analysis.hpp"
#include "escim/generator.hpp"
#include "escim/weyuker.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

struct Options {
    std::vector<std::string> inputs;
    bool corpus = false;
    std::string format = "text";
    std::string si_mode = "delta";
    std::string weights;
    std::vector<std::string> emit{"metrics", "granules", "erm"};
    std::uint64_t seed = 1;
    std::uint64_t weyuker_seed = 42;
    std::size_t count = 1;
    std::size_t samples = 500;
    std::string corpus_dir = ESCIM_DEFAULT_CORPUS;
    bool all_modes = true;
};

bool read_file(const fs::path& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

std::vector<fs::path> expand_inputs(const Options& opt, std::string& error) {
    std::vector<fs::path> files;
    for (const std::string& input : opt.inputs) {
        const fs::path path(input);
        if (opt.corpus && fs::is_directory(path)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file() && entry.path().extension() == ".mc")
                    found.push_back(entry.path());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(path)) {
            files.push_back(path);
        } else {
            error = "cannot read '" + input + "'";
            return {};
        }
    }
    return files;
}

int run_analyze(const Options& opt) {
    const escim::SiMode mode = *escim::parse_si_mode(opt.si_mode);
    escim::WeightTable weights;
    std::set<escim::Emit> emit;
    try {
        if (!opt.weights.empty()) weights = escim::WeightTable::load(opt.weights);
    } catch (const escim::ConfigError& e) {
        std::cerr << "escim: " << e.what() << '\n';
        return kUsage;
    }
    for (const std::string& e : opt.emit) emit.insert(*escim::parse_emit(e));

    std::string error;
    const std::vector<fs::path> files = expand_inputs(opt, error);
    if (!error.empty()) {
        std::cerr << "escim: " << error << '\n';
        return kUsage;
    }

    const bool json = opt.format == "json";
    ordered_json reports = ordered_json::array();
    std::string text;
    std::uint64_t total_loc = 0, total_escim = 0, total_il = 0;
    int status = kOk;
    for (const fs::path& file : files) {
        std::string source;
        if (!read_file(file, source)) {
            std::cerr << "escim: cannot read '" << file.string() << "'\n";
            return kUsage;
        }
        try {
            const escim::Analysis analysis = escim::analyze_source(source, file.string());
            const escim::MetricsReport report = escim::make_report(analysis, weights, mode);
            total_loc += report.loc;
            total_escim += report.escim;
            total_il += report.i_l;
            if (json) {
                reports.push_back(escim::report_json(report, analysis, emit));
            } else {
                if (!text.empty()) text += '\n';
                text += escim::report_text(report, analysis, emit);
            }
        } catch (const escim::Error& e) {
            status = kDiagnostics;
            if (json) {
                reports.push_back(ordered_json{{"file", file.string()},
                                               {"diagnostics", ordered_json::array({escim::diagnostic_json(e)})}});
            } else {
                if (!text.empty()) text += '\n';
                text += "file: " + file.string() + "\nerror: " + e.kind() + ": " + e.what() + '\n';
            }
        }
    }

    if (json) {
        if (!opt.corpus && reports.size() == 1) {
            std::cout << reports[0].dump(2) << '\n';
        } else {
            ordered_json out;
            out["si_mode"] = opt.si_mode;
            out["files"] = std::move(reports);
            out["totals"] = {{"files", files.size()},
                             {"loc", total_loc},
                             {"i_l", total_il},
                             {"escim", total_escim}};
            std::cout << out.dump(2) << '\n';
        }
    } else {
        std::cout << text;
        if (opt.corpus || files.size() > 1)
            std::cout << "\ntotal: " << files.size() << " files  LOC " << total_loc << "  I(L) "
                      << total_il << "  ESCIM " << total_escim << '\n';
    }
    return status;
}

int run_weyuker(const Options& opt) {
    escim::MatrixConfig config;
    config.seed = opt.weyuker_seed;
    config.samples = opt.samples;
    if (!opt.all_modes) config.modes = {*escim::parse_si_mode(opt.si_mode)};
    if (!opt.corpus_dir.empty()) {
        if (!fs::is_directory(opt.corpus_dir)) {
            std::cerr << "escim: corpus directory '" << opt.corpus_dir << "' not found\n";
            return kUsage;
        }
        try {
            config.corpus = escim::load_corpus(opt.corpus_dir);
        } catch (const escim::Error& e) {
            std::cerr << "escim: corpus: " << e.what() << '\n';
            return kDiagnostics;
        }
    }
    const escim::VerdictTable table = escim::run_matrix(config);
    if (opt.format == "json")
        std::cout << escim::verdicts_json(table).dump(2) << '\n';
    else
        std::cout << escim::verdicts_text(table);
    return kOk;
}

int run_generate(const Options& opt) {
    for (std::size_t i = 0; i < opt.count; ++i) {
        if (i) std::cout << '\n';
        std::cout << escim::generate_source(opt.seed + i);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scope-aware cognitive complexity (SICN/ESCIM) for MiniC programs"};
    app.require_subcommand(1);
    Options opt;

    const std::vector<std::string> modes{"delta", "minmax", "absolute"};
    const std::vector<std::string> emits{"metrics", "erm", "ledger", "granules"};

    auto* analyze = app.add_subcommand("analyze", "Analyze MiniC source files");
    analyze->add_option("inputs", opt.inputs, "Source files (directories with --corpus)")->required();
    analyze->add_flag("--corpus", opt.corpus, "Treat directory inputs as corpora of .mc files");
    analyze->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--si-mode", opt.si_mode)->check(CLI::IsMember(modes));
    analyze->add_option("--weights", opt.weights, "JSON weight table");
    analyze->add_option("--emit", opt.emit, "Report sections")
        ->delimiter(',')
        ->check(CLI::IsMember(emits));

    auto* weyuker = app.add_subcommand("weyuker", "Check Weyuker's properties");
    auto* mode_opt = weyuker->add_option("--si-mode", opt.si_mode, "Single mode (default: all)")
                         ->check(CLI::IsMember(modes));
    weyuker->add_option("--seed", opt.weyuker_seed);
    weyuker->add_option("--samples", opt.samples, "Generated programs per mode");
    weyuker->add_option("--corpus", opt.corpus_dir, "Fixture directory (empty string for none)");
    weyuker->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));

    auto* generate = app.add_subcommand("generate", "Print random MiniC programs");
    generate->add_option("--seed", opt.seed);
    generate->add_option("--count", opt.count);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*analyze) return run_analyze(opt);
    if (*weyuker) {
        opt.all_modes = mode_opt->count() == 0;
        return run_weyuker(opt);
    }
    if (*generate) return run_generate(opt);
    return kUsage;
}
