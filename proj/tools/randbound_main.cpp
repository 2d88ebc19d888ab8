#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "randbound/errors.hpp"
#include "randbound/family_io.hpp"
#include "randbound/suites.hpp"

namespace {

constexpr int kExitAllPass = 0;
constexpr int kExitAnyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitContract = 3;

struct OutputOptions {
    std::string path;   // empty -> stdout
    std::string format = "json";
};

int emit_report(const randbound::RunReport& rep, const OutputOptions& out) {
    const std::string text = out.format == "csv" ? rep.to_csv() : rep.to_json();
    if (out.path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out.path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out.path << "\n";
            return kExitUsage;
        }
        f << text;
    }
    return rep.all_pass() ? kExitAllPass : kExitAnyFail;
}

void report_json_position(const std::string& text, size_t byte, const std::string& path) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::cerr << "error: " << path << ":" << line << ":" << col << ": invalid family JSON\n";
}

std::vector<long long> parse_n_list(const std::string& arg) {
    std::vector<long long> ns;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        ns.push_back(std::stoll(item));
    }
    if (ns.empty()) throw randbound::DomainError("gap: empty N list");
    return ns;
}

randbound::Vector parse_coeff_list(const std::string& arg) {
    randbound::Vector a;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        a.push_back(std::stod(item));
    }
    if (a.empty()) throw randbound::DomainError("diag-exact: empty coefficient list");
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randbound: brackets and cross-checks for randomized operator bounds"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    randbound::SuiteConfig cfg;
    OutputOptions out;
    bool noTimestamp = false;
    app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Monte Carlo samples per estimate")
        ->capture_default_str();
    app.add_option("--confidence", cfg.confidence, "confidence level in (0,1)")
        ->capture_default_str();
    app.add_option("--budget", cfg.budget, "search restarts")->capture_default_str();
    app.add_option("--out", out.path, "output path (default stdout)");
    app.add_option("--format", out.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--no-timestamp", noTimestamp,
                 "omit the timestamp and zero elapsed_ms for byte-reproducible reports");

    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suiteName;
    long long sudakovN = -1;
    std::string diagAArg;
    int casesOverride = -1;
    verify->add_option("suite", suiteName,
                       "one of: sudakov komatsu expsup comparison-constants diag-exact "
                       "identities duality product")
        ->required();
    verify->add_option("--n", sudakovN, "single-case n (sudakov suite)");
    verify->add_option("--a", diagAArg, "comma-separated coefficients (diag-exact suite)");
    verify->add_option("--cases", casesOverride, "override the random case count");

    auto* gap = app.add_subcommand("gap", "R-vs-gamma gap scan over coordinate families");
    std::string nListArg = "2,8,64,1024";
    gap->add_option("--N", nListArg, "comma-separated N values")->capture_default_str();

    auto* bound = app.add_subcommand("bound", "bracket one constant for a family file");
    std::string familyPath;
    std::string constant;
    bound->add_option("file", familyPath, "family JSON file")->required();
    bound->add_option("--constant", constant, "r|gamma|ell2|pi2|pi21|cotype2|cotype2gamma")
        ->required()
        ->check(CLI::IsMember({"r", "gamma", "ell2", "pi2", "pi21", "cotype2", "cotype2gamma"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    cfg.withTimestamp = !noTimestamp;

    try {
        randbound::RunReport rep;
        if (verify->parsed()) {
            bool known = false;
            for (const std::string& s : randbound::verify_suite_names())
                if (s == suiteName) known = true;
            if (!known) {
                std::cerr << "error: unknown suite '" << suiteName << "'; available:";
                for (const std::string& s : randbound::verify_suite_names()) std::cerr << " " << s;
                std::cerr << "\n";
                return kExitUsage;
            }
            if (sudakovN >= 0) cfg.sudakovN = sudakovN;
            if (!diagAArg.empty()) {
                try {
                    cfg.diagA = parse_coeff_list(diagAArg);
                } catch (const std::exception&) {
                    std::cerr << "error: invalid --a coefficient list '" << diagAArg << "'\n";
                    return kExitUsage;
                }
            }
            if (casesOverride > 0) {
                cfg.sudakovCases = casesOverride;
                cfg.comparisonCases = casesOverride;
                cfg.diagCases = casesOverride;
                cfg.identityCases = casesOverride;
                cfg.dualityCases = casesOverride;
                cfg.singletonCases = casesOverride;
            }
            rep = randbound::run_verify_suite(suiteName, cfg);
        } else if (gap->parsed()) {
            std::vector<long long> ns;
            try {
                ns = parse_n_list(nListArg);
            } catch (const std::exception&) {
                std::cerr << "error: invalid --N list '" << nListArg << "'\n";
                return kExitUsage;
            }
            rep = randbound::run_gap(ns, cfg);
        } else {
            std::ifstream in(familyPath);
            if (!in) {
                std::cerr << "error: cannot open " << familyPath << "\n";
                return kExitUsage;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            const std::string text = buf.str();
            randbound::NamedFamily nf;
            try {
                nf = randbound::parse_family_json(text);
            } catch (const nlohmann::json::parse_error& e) {
                report_json_position(text, e.byte, familyPath);
                return kExitUsage;
            } catch (const nlohmann::json::exception& e) {
                std::cerr << "error: " << familyPath << ": " << e.what() << "\n";
                return kExitUsage;
            } catch (const randbound::Error& e) {
                // schema violations in the family file are input errors
                std::cerr << "error: " << familyPath << ": " << e.what() << "\n";
                return kExitUsage;
            }
            rep = randbound::run_bound(nf, constant, cfg);
        }
        return emit_report(rep, out);
    } catch (const randbound::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    }
}
