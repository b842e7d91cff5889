#include "greedylab/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace greedylab {

namespace {

std::string verdict_of(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

CheckRecord CheckRecord::le(std::string name, double measured, double bound, std::string anchor,
                            std::string witness, double tolerance) {
    CheckRecord r;
    r.name = std::move(name);
    r.measured = measured;
    r.bound = bound;
    r.relation = Relation::LessEq;
    r.anchor = std::move(anchor);
    r.witness = std::move(witness);
    r.verdict = verdict_of(measured <= bound + tolerance);
    return r;
}

CheckRecord CheckRecord::ge(std::string name, double measured, double bound, std::string anchor,
                            std::string witness, double tolerance) {
    CheckRecord r;
    r.name = std::move(name);
    r.measured = measured;
    r.bound = bound;
    r.relation = Relation::GreaterEq;
    r.anchor = std::move(anchor);
    r.witness = std::move(witness);
    r.verdict = verdict_of(measured >= bound - tolerance);
    return r;
}

CheckRecord CheckRecord::inconclusive(std::string name, std::string anchor, std::string witness) {
    CheckRecord r;
    r.name = std::move(name);
    r.measured = std::nan("");
    r.bound = std::nan("");
    r.anchor = std::move(anchor);
    r.witness = std::move(witness);
    r.verdict = "inconclusive";
    return r;
}

bool Report::any_fail() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.verdict == "fail"; });
}

bool Report::any_inconclusive() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.verdict == "inconclusive"; });
}

int Report::exit_code() const {
    if (any_fail()) return 1;
    if (any_inconclusive()) return 3;
    return 0;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        out << (i ? "," : "") << report.columns[i];
    out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json j;
    j["experiment"] = report.experiment;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : report.config) cfg[k] = v;
    j["config"] = cfg;
    j["columns"] = report.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) rows.push_back(row);
    j["rows"] = rows;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["measured"] = format_double(c.measured);
        jc["bound"] = format_double(c.bound);
        jc["relation"] = c.relation == CheckRecord::Relation::LessEq ? "<=" : ">=";
        jc["anchor"] = c.anchor;
        jc["verdict"] = c.verdict;
        jc["witness"] = c.witness;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

void write_json(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << render_json(report);
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            auto nonspace = line.find_first_not_of(" \t\r");
            if (nonspace != std::string::npos)
                throw std::runtime_error("config line is not key = value: " + line);
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw std::runtime_error("config line has empty key: " + line);
        cfg.kv_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

std::string ExperimentConfig::str(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

std::int64_t ExperimentConfig::i64(const std::string& key, std::int64_t fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stoll(it->second);
}

std::uint64_t ExperimentConfig::u64(const std::string& key, std::uint64_t fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stoull(it->second);
}

double ExperimentConfig::dbl(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stod(it->second);
}

void ExperimentConfig::require_known_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [k, _] : kv_) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw std::invalid_argument("unknown config key: " + k);
    }
}

}  // namespace greedylab
