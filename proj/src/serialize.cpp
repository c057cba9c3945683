#include "threshforge/serialize.hpp"

#include <cstdio>
#include <vector>

namespace threshforge {

namespace {

using nlohmann::json;

std::string format_rate(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json counts_per_cluster(const KMeansResult& result) {
    std::vector<std::size_t> counts(result.centroids.size(), 0);
    for (int label : result.labels) ++counts[label];
    return json(counts);
}

}  // namespace

json to_json(const ThresholdReport& report) {
    return json{
        {"threshold", report.threshold},
        {"w_b", report.stats.w_b},
        {"w_f", report.stats.w_f},
        {"mu_b", report.stats.mu_b},
        {"mu_f", report.stats.mu_f},
        {"var_b", report.stats.var_b},
        {"var_f", report.stats.var_f},
        {"sigma_w2", report.sigma_w2},
        {"sigma_b2_between", report.sigma_b2_between},
        {"sigma_total2", report.sigma_total2},
    };
}

json to_json(const KMeansResult& result) {
    return json{
        {"centroids", result.centroids},
        {"counts", counts_per_cluster(result)},
        {"iterations", result.iterations},
        {"inertia", result.inertia},
    };
}

json to_json(const RunReport& report, bool include_timings) {
    json out{
        {"method", report.method},
        {"stages", report.stages},
        {"threshold_report", to_json(report.threshold_report)},
    };
    if (report.kmeans_summary) {
        out["kmeans_summary"] = to_json(*report.kmeans_summary);
    }
    if (report.sigma) {
        out["sigma"] = *report.sigma;
    }
    if (include_timings) {
        json timings = json::array();
        for (const StageTiming& t : report.timings) {
            timings.push_back(json{{"stage", t.stage}, {"ms", t.ms}});
        }
        out["timings_ms"] = std::move(timings);
    }
    return out;
}

json to_json(const ComparisonReport& report) {
    json rows = json::array();
    for (const ComparisonRow& row : report.rows) {
        rows.push_back(json{
            {"seed", row.seed},
            {"classic_rate", row.classic_rate},
            {"improved_rate", row.improved_rate},
        });
    }
    return json{
        {"n_seeds", report.n_seeds},
        {"rows", std::move(rows)},
        {"classic_mean", report.classic_mean},
        {"improved_mean", report.improved_mean},
        {"improved_wins", report.improved_wins},
        {"classic_wins", report.classic_wins},
        {"ties", report.ties},
    };
}

json to_json(const AxiomReport& report) {
    json axioms = json::array();
    for (const AxiomCheck& check : report.axioms) {
        json entry{
            {"name", check.name},
            {"checks", check.checks},
            {"failures", check.failures},
        };
        if (check.first_failure) {
            const Counterexample& ce = *check.first_failure;
            entry["first_failure"] = json{
                {"a", ce.a},      {"b", ce.b},      {"c", ce.c},
                {"ternary", ce.ternary}, {"lhs", ce.lhs}, {"rhs", ce.rhs},
            };
        }
        axioms.push_back(std::move(entry));
    }
    json out{
        {"mode", report.mode},
        {"axioms", std::move(axioms)},
        {"all_passed", report.all_passed},
    };
    if (report.mode == "sampled") {
        out["sample_size"] = report.sample_size;
        out["seed"] = report.seed;
    }
    return out;
}

std::string comparison_csv(const ComparisonReport& report) {
    std::string out = "seed,classic_rate,improved_rate\n";
    for (const ComparisonRow& row : report.rows) {
        out += std::to_string(row.seed);
        out += ',';
        out += format_rate(row.classic_rate);
        out += ',';
        out += format_rate(row.improved_rate);
        out += '\n';
    }
    return out;
}

std::string select_rule_name(const SelectRule& rule) {
    switch (rule.kind) {
        case SelectKind::Brightest:
            return "brightest";
        case SelectKind::Largest:
            return "largest";
        case SelectKind::Index:
            return "index:" + std::to_string(rule.index);
    }
    return "brightest";
}

}  // namespace threshforge
