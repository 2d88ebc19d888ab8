// Acceptance suite: one pass/fail line per criterion, exit 0 only when every
// criterion holds at its stated tolerance and runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "randbound/suites.hpp"

using namespace randbound;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int index, const std::string& name, bool pass, double seconds, double limit,
            const std::string& detail = "") {
    const bool inTime = seconds <= limit;
    const bool ok = pass && inTime;
    if (!ok) ++failures;
    std::printf("%s  criterion %d: %-22s  (%6.1f s / limit %4.0f s)%s%s\n", ok ? "PASS" : "FAIL",
                index, name.c_str(), seconds, limit, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
}

SuiteConfig base_config() {
    SuiteConfig cfg;
    cfg.seed = 42;
    cfg.samples = 100000;
    cfg.confidence = 0.99;
    cfg.budget = 64;
    cfg.withTimestamp = false;
    return cfg;
}

std::string first_failure(const RunReport& rep) {
    for (const ReportRow& r : rep.rows)
        if (!r.pass) return "first failing row: " + r.caseId;
    return "";
}

} // namespace

int main() {
    const SuiteConfig cfg = base_config();

    { // 1. diagonal exactness at budget 64
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_verify_suite("diag-exact", cfg);
        report(1, "diag-exact", rep.all_pass() && rep.rows.size() == 100, seconds_since(t0), 30.0,
               first_failure(rep));
    }
    { // 2. Sudakov-variant inequality, 1000 cases, n up to 10^4
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_verify_suite("sudakov", cfg);
        report(2, "sudakov", rep.all_pass() && rep.rows.size() == 1000, seconds_since(t0), 120.0,
               first_failure(rep));
    }
    { // 3. Komatsu tail floor on the grid {0, 0.1, ..., 10}
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_verify_suite("komatsu", cfg);
        report(3, "komatsu", rep.all_pass() && rep.rows.size() == 101, seconds_since(t0), 1.0,
               first_failure(rep));
    }
    { // 4. E sup gamma^2 bound for n in {1, 2, ..., 4096}
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_verify_suite("expsup", cfg);
        report(4, "expsup", rep.all_pass() && rep.rows.size() == 13, seconds_since(t0), 60.0,
               first_failure(rep));
    }
    { // 5. gamma bracket and increasing ratio floor
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_gap({2, 8, 64, 1024}, cfg);
        report(5, "gamma-bracket", rep.all_pass() && rep.rows.size() == 5, seconds_since(t0), 120.0,
               first_failure(rep));
    }
    { // 6. R = C2 and l2 = pi2 identities within 2% at brute-force scale
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_verify_suite("identities", cfg);
        report(6, "identities", rep.all_pass() && rep.rows.size() == 40, seconds_since(t0), 300.0,
               first_failure(rep));
    }
    { // 7. duality consistency and the singleton Grothendieck bound
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_verify_suite("duality", cfg);
        report(7, "duality", rep.all_pass() && rep.rows.size() == 250, seconds_since(t0), 120.0,
               first_failure(rep));
    }
    { // 8. comparison constants sqrt(pi/2) and sqrt(2)
        const auto t0 = std::chrono::steady_clock::now();
        const RunReport rep = run_verify_suite("comparison-constants", cfg);
        report(8, "comparison-constants", rep.all_pass() && rep.rows.size() == 400,
               seconds_since(t0), 60.0, first_failure(rep));
    }
    { // 9. byte-identical reruns of every suite and the gap scan
        const auto t0 = std::chrono::steady_clock::now();
        bool identical = true;
        std::string offender;
        SuiteConfig small = cfg;
        small.sudakovCases = 5;
        small.comparisonCases = 5;
        small.diagCases = 5;
        small.identityCases = 5;
        small.dualityCases = 5;
        small.singletonCases = 5;
        for (const std::string& suite : verify_suite_names()) {
            const std::string a = run_verify_suite(suite, small).to_json();
            const std::string b = run_verify_suite(suite, small).to_json();
            if (a != b) {
                identical = false;
                offender = "suite " + suite;
            }
        }
        const std::string g1 = run_gap({2, 8, 64}, small).to_json();
        const std::string g2 = run_gap({2, 8, 64}, small).to_json();
        if (g1 != g2) {
            identical = false;
            offender = "gap";
        }
        report(9, "determinism", identical, seconds_since(t0), 120.0, offender);
    }

    if (failures == 0) {
        std::printf("acceptance: all criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", failures);
    return 1;
}
