#include "randbound/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <json.hpp>

namespace randbound {

namespace {

using nlohmann::json;

json number_or_inf(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::string csv_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return json(v).dump(); // shortest round-trip
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

bool RunReport::all_pass() const {
    for (const ReportRow& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string RunReport::to_json() const {
    json j;
    j["schemaVersion"] = schemaVersion;
    j["command"] = command;
    j["config"] = {{"seed", seed},
                   {"samples", samples},
                   {"confidence", confidence},
                   {"budget", budget}};
    if (withTimestamp) j["timestamp"] = timestamp;
    json rowsJson = json::array();
    for (const ReportRow& r : rows) {
        json row;
        row["case"] = r.caseId;
        row["check"] = r.check;
        row["lower"] = number_or_inf(r.lower);
        row["upper"] = number_or_inf(r.upper);
        row["ci_halfwidth"] = r.ciHalfWidth;
        row["pass"] = r.pass;
        row["elapsed_ms"] = r.elapsedMs;
        for (const auto& [k, v] : r.extra) row[k] = number_or_inf(v);
        rowsJson.push_back(std::move(row));
    }
    j["rows"] = std::move(rowsJson);
    return j.dump(2) + "\n";
}

std::string RunReport::to_csv() const {
    std::string out = "case,lower,upper,ci_halfwidth,pass,elapsed_ms\r\n";
    for (const ReportRow& r : rows) {
        out += csv_escape(r.caseId);
        out += ',';
        out += csv_number(r.lower);
        out += ',';
        out += csv_number(r.upper);
        out += ',';
        out += csv_number(r.ciHalfWidth);
        out += ',';
        out += r.pass ? "true" : "false";
        out += ',';
        out += csv_number(r.elapsedMs);
        out += "\r\n";
    }
    return out;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace randbound
