#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace greedylab {

// One verified bound. `anchor` states the inequality being tested in plain math,
// e.g. "ratio >= m^(1/4)/24"; pass/fail is determined solely by the numbers.
struct CheckRecord {
    enum class Relation { LessEq, GreaterEq };

    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    Relation relation = Relation::LessEq;
    std::string anchor;
    std::string verdict;  // "pass" | "fail" | "inconclusive"
    std::string witness;

    static CheckRecord le(std::string name, double measured, double bound, std::string anchor,
                          std::string witness = {}, double tolerance = 0.0);
    static CheckRecord ge(std::string name, double measured, double bound, std::string anchor,
                          std::string witness = {}, double tolerance = 0.0);
    static CheckRecord inconclusive(std::string name, std::string anchor, std::string witness = {});
};

// Experiment output: resolved config echo, a per-case table (the CSV), and the
// pass/fail checks. Identical config+seed must reproduce identical file bytes,
// so wall-clock is kept out of the serialized forms.
struct Report {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<CheckRecord> checks;
    double wall_seconds = 0.0;

    bool any_fail() const;
    bool any_inconclusive() const;
    // 0 all pass, 1 any fail, 3 inconclusive only
    int exit_code() const;
};

std::string format_double(double v);  // canonical %.17g

void write_csv(const Report& report, const std::string& path);
void write_json(const Report& report, const std::string& path);
std::string render_json(const Report& report);

// Flat key=value config with CLI overrides; unknown keys are rejected at
// validation time against the experiment's allowed-key list.
class ExperimentConfig {
public:
    ExperimentConfig() = default;

    static ExperimentConfig from_file(const std::string& path);

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& fallback) const;
    std::int64_t i64(const std::string& key, std::int64_t fallback) const;
    std::uint64_t u64(const std::string& key, std::uint64_t fallback) const;
    double dbl(const std::string& key, double fallback) const;

    void require_known_keys(const std::vector<std::string>& allowed) const;

    const std::map<std::string, std::string>& items() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace greedylab
