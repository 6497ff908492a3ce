#include "deduce/cli.hpp"

#include "deduce/engine.hpp"
#include "deduce/oracle.hpp"
#include "deduce/problem.hpp"
#include "deduce/proof_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace deduce::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string input;
    std::string emit;
    bool check = false;
    bool stats = false;
    bool oracle = false;
    std::size_t oracle_depth = 8;
    std::string verify;
};

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Outcome {
    int code = kUsageError;
    SearchStats stats;
};

Outcome solve(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err)
{
    const Problem problem = parse_problem(text);
    TermBank bank(problem.signature());
    std::vector<Term> gamma;
    for (const auto& a : problem.assumptions) gamma.push_back(bank.intern(a));
    const Term goal = bank.intern(problem.goal);

    const Decision d = decide(bank, gamma, goal);
    out << (d.provable ? "derivable" : "not derivable") << '\n';

    std::vector<Term> normal;
    for (Term g : gamma) normal.push_back(normalize(bank, g));
    const Sequent seq{TermSet(std::move(normal)), normalize(bank, goal)};

    if (d.provable && opt.emit == "text") out << render_text(bank, *d.proof);
    if (d.provable && opt.emit == "json") out << document_to_json(bank, seq, *d.proof).dump(2) << '\n';

    if (d.provable && opt.check) {
        const auto doc = document_from_json(nlohmann::json::parse(document_to_json(bank, seq, *d.proof).dump()));
        const CheckResult r = check_proof(*doc.bank, doc.proof, doc.sequent);
        if (!r) throw InvariantViolation("re-parsed proof rejected at [" + r.path + "]: " + r.reason);
        err << "check: accepted (" << doc.proof.node_count() << " nodes)\n";
    }

    if (opt.oracle) {
        OracleBudget budget;
        budget.max_depth = opt.oracle_depth;
        const bool nd = nd_prove(bank, gamma, goal, budget) == OracleVerdict::Provable;
        err << "oracle: " << (nd ? "provable" : "unknown") << " (depth " << budget.max_depth << ")\n";
        if (nd && !d.provable) throw InvariantViolation("oracle derives the goal but the search does not");
    }

    if (opt.stats) {
        err << "iterations=" << d.stats.iterations << '\n'
            << "saturated_size=" << d.stats.saturated_size << '\n'
            << "linear_steps=" << d.stats.linear_steps << '\n'
            << "elementary_calls=" << d.stats.elementary_calls << '\n'
            << "max_recipe_size=" << d.stats.max_recipe_size << '\n'
            << "proof_nodes=" << (d.proof ? d.proof->node_count() : 0) << '\n'
            << "wall_ms=" << std::fixed << std::setprecision(3) << d.stats.wall_ms << '\n';
    }
    return {d.provable ? kDerivable : kNotDerivable, d.stats};
}

// Exit code for one problem file; all failures are reported on `err`.
Outcome solve_file(const fs::path& path, const Options& opt, std::ostream& out, std::ostream& err)
{
    try {
        return solve(read_file(path), opt, out, err);
    } catch (const ParseError& e) {
        err << path.string() << ":" << e.what() << '\n';
    } catch (const TermError& e) {
        err << path.string() << ": " << e.what() << '\n';
    } catch (const InvariantViolation& e) {
        err << path.string() << ": internal invariant violation: " << e.what() << '\n';
        return {kInvariantViolation, {}};
    } catch (const std::runtime_error& e) {
        err << e.what() << '\n';
    }
    return {kUsageError, {}};
}

int batch(const fs::path& dir, const Options& opt, std::ostream& out, std::ostream& err)
{
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".problem") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::size_t width = 4;
    for (const auto& f : files) width = std::max(width, f.filename().string().size());
    std::ostringstream table;
    table << std::left << std::setw(static_cast<int>(width)) << "file" << "  " << std::setw(14) << "result"
          << std::right << std::setw(6) << "steps" << std::setw(10) << "ms" << '\n';

    int worst = kDerivable;
    std::size_t counts[4] = {0, 0, 0, 0};
    Options quiet = opt;
    quiet.emit.clear();
    for (const auto& f : files) {
        std::ostringstream sink;
        const Outcome o = solve_file(f, quiet, sink, err);
        ++counts[o.code];
        static constexpr const char* kLabel[] = {"derivable", "not derivable", "error", "VIOLATION"};
        table << std::left << std::setw(static_cast<int>(width)) << f.filename().string() << "  " << std::setw(14)
              << kLabel[o.code] << std::right << std::setw(6) << o.stats.linear_steps << std::setw(10) << std::fixed
              << std::setprecision(2) << o.stats.wall_ms << '\n';
        if (o.code == kInvariantViolation) worst = kInvariantViolation;
        else if (o.code == kUsageError && worst != kInvariantViolation) worst = kUsageError;
    }
    out << table.str();
    out << files.size() << " problems: " << counts[0] << " derivable, " << counts[1] << " not derivable, "
        << counts[2] << " errors, " << counts[3] << " violations\n";
    return worst;
}

int verify(const fs::path& path, std::ostream& out, std::ostream& err)
{
    try {
        const auto doc = document_from_json(nlohmann::json::parse(read_file(path)));
        const CheckResult r = check_proof(*doc.bank, doc.proof, doc.sequent);
        if (r) {
            out << "accepted\n";
            return kDerivable;
        }
        out << "rejected at [" << r.path << "]: " << r.reason << '\n';
        return kNotDerivable;
    } catch (const std::exception& e) {
        err << path.string() << ": " << e.what() << '\n';
        return kUsageError;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Decides ground intruder deduction problems and emits checkable proofs."};
    app.name("deduce");
    Options opt;
    app.add_option("problem", opt.input, "Problem file, or a directory of *.problem files for a batch run");
    app.add_option("--emit-proof", opt.emit, "Print the proof of a derivable goal")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--check", opt.check, "Round-trip the proof through JSON and re-check it");
    std::vector<std::string> oracle_arg;
    auto* oracle = app.add_option("--oracle-check", oracle_arg,
                                  "Cross-check against the brute-force oracle (optional depth, default 8)")
                       ->expected(0, 1)
                       ->allow_extra_args(false);
    app.add_flag("--stats", opt.stats, "Print search statistics as key=value lines on stderr");
    app.add_option("--verify", opt.verify, "Check a JSON proof document instead of solving");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (!oracle_arg.empty() && !oracle_arg.front().empty()) {
            const std::string& v = oracle_arg.front();
            const bool numeric = !v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
            if (numeric) {
                opt.oracle_depth = std::stoul(v);
            } else if (opt.input.empty()) {
                // `--oracle-check file` without a depth.
                opt.input = v;
            } else {
                throw CLI::ValidationError("--oracle-check", "depth must be a non-negative integer");
            }
        }
        if (opt.verify.empty() && opt.input.empty()) throw CLI::RequiredError("problem");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsageError;
    }
    opt.oracle = oracle->count() > 0;

    if (!opt.verify.empty()) return verify(opt.verify, out, err);
    const fs::path input(opt.input);
    std::error_code ec;
    if (fs::is_directory(input, ec)) return batch(input, opt, out, err);
    return solve_file(input, opt, out, err).code;
}

} // namespace deduce::cli
