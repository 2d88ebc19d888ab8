#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace randbound {

/// One verification/search result row. `lower`, `upper`, and `ciHalfWidth`
/// are the numeric fields the pass flag is recomputed from; `check` names
/// the engine invariant the row exercises.
struct ReportRow {
    std::string caseId;
    std::string check;
    double lower = 0.0;
    double upper = 0.0;
    double ciHalfWidth = 0.0;
    bool pass = false;
    double elapsedMs = 0.0;
    std::map<std::string, double> extra; // emitted in JSON only
};

struct RunReport {
    int schemaVersion = 1;
    std::string command;
    uint64_t seed = 42;
    long long samples = 100000;
    double confidence = 0.99;
    int budget = 64;
    bool withTimestamp = true;
    std::string timestamp; // ISO-8601 UTC when withTimestamp
    std::vector<ReportRow> rows;

    bool all_pass() const;
    /// Canonical JSON: sorted keys, shortest round-trip numbers, +inf as "inf".
    std::string to_json() const;
    /// RFC 4180 CSV with the fixed header case,lower,upper,ci_halfwidth,pass,elapsed_ms.
    std::string to_csv() const;
};

std::string iso8601_utc_now();

} // namespace randbound
