#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace modsem {

// Per (project x algorithm x scheme) evaluation results. Undefined metrics
// carry a reason instead of a value; a report whose whole computation failed
// carries the failure in `status` and no metric values.
struct MetricsReport {
    std::string project_id;
    std::string algorithm;
    std::string scheme;
    std::string status = "ok";

    std::optional<double> coh;
    std::optional<double> sep;
    std::optional<double> silhouette;
    std::optional<double> dep_sim_r;
    std::string coh_reason;
    std::string sep_reason;
    std::string silhouette_reason;
    std::string dep_sim_r_reason;

    std::map<int, double> community_cohesion; // community id -> cohesion
    int community_count = 0;
    std::vector<int> community_sizes; // sizes of retained communities
    double retained_node_fraction = 0.0;

    nlohmann::json to_json() const;
    static MetricsReport from_json(const nlohmann::json& j);

    static std::string csv_header();
    std::string to_csv_row() const;

    bool operator==(const MetricsReport&) const = default;
};

struct WinCell {
    int leiden = 0;
    int infomap = 0;
    int ties = 0;
    int compared = 0; // projects where both algorithms had a defined value
};

struct CohSepCell {
    int count = 0;   // projects with cohesion > separation
    int defined = 0; // projects where both metrics were defined
    double pct = 0.0;
};

struct DistributionSummary {
    double min = 0, median = 0, mean = 0, max = 0;
    static DistributionSummary of(std::vector<double> values);
};

// Cross-project aggregation: per metric x scheme, how often each algorithm
// beat the other (better = higher cohesion/silhouette, lower separation,
// more negative dependency-similarity correlation).
struct AggregateReport {
    int project_count = 0;
    int failed_count = 0;
    std::vector<std::pair<std::string, std::string>> failures; // project id, reason

    // metric -> scheme -> cell
    std::map<std::string, std::map<std::string, WinCell>> wins;
    // algorithm -> scheme -> cell
    std::map<std::string, std::map<std::string, CohSepCell>> cohesion_gt_separation;
    // algorithm -> summary over projects
    std::map<std::string, DistributionSummary> communities_per_project;
    std::map<std::string, DistributionSummary> community_size;

    nlohmann::json to_json() const;
    std::string to_text() const; // aligned table, rows = metrics, columns = scheme x algorithm
};

AggregateReport aggregate(const std::vector<MetricsReport>& reports);

} // namespace modsem
