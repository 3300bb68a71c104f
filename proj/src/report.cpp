#include "modsem/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "modsem/errors.hpp"

namespace modsem {

namespace {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

nlohmann::json opt_to_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> opt_from_json(const nlohmann::json& j) {
    return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}

} // namespace

nlohmann::json MetricsReport::to_json() const {
    nlohmann::json j;
    j["project_id"] = project_id;
    j["algorithm"] = algorithm;
    j["scheme"] = scheme;
    j["status"] = status;
    j["coh"] = opt_to_json(coh);
    j["sep"] = opt_to_json(sep);
    j["silhouette"] = opt_to_json(silhouette);
    j["dep_sim_r"] = opt_to_json(dep_sim_r);
    j["coh_reason"] = coh_reason;
    j["sep_reason"] = sep_reason;
    j["silhouette_reason"] = silhouette_reason;
    j["dep_sim_r_reason"] = dep_sim_r_reason;
    nlohmann::json cc = nlohmann::json::object();
    for (const auto& [id, value] : community_cohesion)
        cc[std::to_string(id)] = value;
    j["community_cohesion"] = cc;
    j["community_count"] = community_count;
    j["community_sizes"] = community_sizes;
    j["retained_node_fraction"] = retained_node_fraction;
    return j;
}

MetricsReport MetricsReport::from_json(const nlohmann::json& j) {
    MetricsReport r;
    r.project_id = j.at("project_id").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.scheme = j.at("scheme").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.coh = opt_from_json(j.at("coh"));
    r.sep = opt_from_json(j.at("sep"));
    r.silhouette = opt_from_json(j.at("silhouette"));
    r.dep_sim_r = opt_from_json(j.at("dep_sim_r"));
    r.coh_reason = j.at("coh_reason").get<std::string>();
    r.sep_reason = j.at("sep_reason").get<std::string>();
    r.silhouette_reason = j.at("silhouette_reason").get<std::string>();
    r.dep_sim_r_reason = j.at("dep_sim_r_reason").get<std::string>();
    for (const auto& [key, value] : j.at("community_cohesion").items())
        r.community_cohesion[std::stoi(key)] = value.get<double>();
    r.community_count = j.at("community_count").get<int>();
    r.community_sizes = j.at("community_sizes").get<std::vector<int>>();
    r.retained_node_fraction = j.at("retained_node_fraction").get<double>();
    return r;
}

std::string MetricsReport::csv_header() {
    return "project_id,algorithm,scheme,status,coh,sep,silhouette,dep_sim_r,"
           "community_count,community_sizes,retained_node_fraction";
}

std::string MetricsReport::to_csv_row() const {
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    std::string sizes;
    for (std::size_t i = 0; i < community_sizes.size(); ++i)
        sizes += (i ? ";" : "") + std::to_string(community_sizes[i]);
    std::ostringstream out;
    out << project_id << ',' << algorithm << ',' << scheme << ',' << status << ',' << opt(coh) << ',' << opt(sep)
        << ',' << opt(silhouette) << ',' << opt(dep_sim_r) << ',' << community_count << ',' << sizes << ','
        << format_double(retained_node_fraction);
    return out.str();
}

DistributionSummary DistributionSummary::of(std::vector<double> values) {
    DistributionSummary s;
    if (values.empty())
        return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    std::size_t n = values.size();
    s.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    double sum = 0;
    for (double v : values)
        sum += v;
    s.mean = sum / static_cast<double>(n);
    return s;
}

namespace {

nlohmann::json summary_to_json(const DistributionSummary& s) {
    return {{"min", s.min}, {"median", s.median}, {"mean", s.mean}, {"max", s.max}};
}

// Better-direction comparison; returns +1 when a beats b, -1 when b beats a,
// 0 on a tie.
int compare_metric(const std::string& metric, double a, double b) {
    bool higher_better = (metric == "cohesion" || metric == "silhouette");
    if (a == b)
        return 0;
    bool a_wins = higher_better ? a > b : a < b;
    return a_wins ? 1 : -1;
}

std::optional<double> metric_value(const MetricsReport& r, const std::string& metric) {
    if (r.status != "ok")
        return std::nullopt;
    if (metric == "cohesion")
        return r.coh;
    if (metric == "separation")
        return r.sep;
    if (metric == "silhouette")
        return r.silhouette;
    return r.dep_sim_r;
}

} // namespace

AggregateReport aggregate(const std::vector<MetricsReport>& reports) {
    AggregateReport agg;

    std::set<std::string> projects, schemes;
    for (const auto& r : reports) {
        projects.insert(r.project_id);
        schemes.insert(r.scheme);
    }
    agg.project_count = static_cast<int>(projects.size());

    // index by (project, algorithm, scheme)
    std::map<std::tuple<std::string, std::string, std::string>, const MetricsReport*> by_key;
    for (const auto& r : reports)
        by_key[{r.project_id, r.algorithm, r.scheme}] = &r;

    const std::vector<std::string> metrics = {"cohesion", "separation", "silhouette", "dep_sim_corr"};
    for (const auto& metric : metrics) {
        for (const auto& scheme : schemes) {
            WinCell cell;
            for (const auto& project : projects) {
                auto li = by_key.find({project, "leiden", scheme});
                auto ii = by_key.find({project, "infomap", scheme});
                if (li == by_key.end() || ii == by_key.end())
                    continue;
                auto lv = metric_value(*li->second, metric);
                auto iv = metric_value(*ii->second, metric);
                if (!lv || !iv)
                    continue;
                ++cell.compared;
                int c = compare_metric(metric, *lv, *iv);
                if (c > 0)
                    ++cell.leiden;
                else if (c < 0)
                    ++cell.infomap;
                else
                    ++cell.ties;
            }
            agg.wins[metric][scheme] = cell;
        }
    }

    // cohesion > separation per algorithm x scheme
    for (const auto& r : reports) {
        if (r.status != "ok")
            continue;
        auto& cell = agg.cohesion_gt_separation[r.algorithm][r.scheme];
        if (r.coh && r.sep) {
            ++cell.defined;
            if (*r.coh > *r.sep)
                ++cell.count;
        }
    }
    for (auto& [algo, per_scheme] : agg.cohesion_gt_separation) {
        for (auto& [scheme, cell] : per_scheme)
            cell.pct = cell.defined ? 100.0 * cell.count / cell.defined : 0.0;
    }

    // community count/size distributions depend on the algorithm only; take
    // one report per (project, algorithm)
    std::map<std::string, std::vector<double>> counts, sizes;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : reports) {
        if (r.status != "ok")
            continue;
        if (!seen.insert({r.project_id, r.algorithm}).second)
            continue;
        counts[r.algorithm].push_back(r.community_count);
        for (int s : r.community_sizes)
            sizes[r.algorithm].push_back(s);
    }
    for (auto& [algo, values] : counts)
        agg.communities_per_project[algo] = DistributionSummary::of(values);
    for (auto& [algo, values] : sizes)
        agg.community_size[algo] = DistributionSummary::of(values);

    return agg;
}

nlohmann::json AggregateReport::to_json() const {
    nlohmann::json j;
    j["project_count"] = project_count;
    j["failed_count"] = failed_count;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& [id, reason] : failures)
        fails.push_back({{"project_id", id}, {"reason", reason}});
    j["failures"] = fails;

    nlohmann::json wj = nlohmann::json::object();
    for (const auto& [metric, per_scheme] : wins) {
        nlohmann::json sj = nlohmann::json::object();
        for (const auto& [scheme, cell] : per_scheme) {
            sj[scheme] = {{"leiden", cell.leiden},
                          {"infomap", cell.infomap},
                          {"ties", cell.ties},
                          {"compared", cell.compared}};
        }
        wj[metric] = sj;
    }
    j["wins"] = wj;

    nlohmann::json cj = nlohmann::json::object();
    for (const auto& [algo, per_scheme] : cohesion_gt_separation) {
        nlohmann::json sj = nlohmann::json::object();
        for (const auto& [scheme, cell] : per_scheme)
            sj[scheme] = {{"count", cell.count}, {"defined", cell.defined}, {"pct", cell.pct}};
        cj[algo] = sj;
    }
    j["cohesion_gt_separation"] = cj;

    nlohmann::json cpj = nlohmann::json::object();
    for (const auto& [algo, s] : communities_per_project)
        cpj[algo] = summary_to_json(s);
    j["communities_per_project"] = cpj;

    nlohmann::json csj = nlohmann::json::object();
    for (const auto& [algo, s] : community_size)
        csj[algo] = summary_to_json(s);
    j["community_size"] = csj;
    return j;
}

std::string AggregateReport::to_text() const {
    std::set<std::string> schemes;
    for (const auto& [metric, per_scheme] : wins) {
        for (const auto& [scheme, cell] : per_scheme)
            schemes.insert(scheme);
    }

    std::ostringstream out;
    const int label_w = 28;
    const int col_w = 24;

    auto pad = [](const std::string& s, int w) {
        return s.size() >= static_cast<std::size_t>(w) ? s : s + std::string(w - s.size(), ' ');
    };

    out << pad("metric", label_w);
    for (const auto& scheme : schemes)
        out << "| " << pad(scheme, col_w);
    out << "\n" << pad("", label_w);
    for ([[maybe_unused]] const auto& scheme : schemes)
        out << "| " << pad("leiden  infomap  ties", col_w);
    out << "\n" << std::string(label_w + static_cast<int>(schemes.size()) * (col_w + 2), '-') << "\n";

    const std::vector<std::pair<std::string, std::string>> rows = {
        {"cohesion", "Cohesion"},
        {"separation", "Separation"},
        {"silhouette", "Silhouette"},
        {"dep_sim_corr", "Dep-Sim Corr"},
    };
    for (const auto& [key, label] : rows) {
        out << pad(label, label_w);
        for (const auto& scheme : schemes) {
            std::string cell = "-";
            auto mi = wins.find(key);
            if (mi != wins.end()) {
                auto si = mi->second.find(scheme);
                if (si != mi->second.end() && si->second.compared > 0) {
                    std::ostringstream c;
                    c << si->second.leiden << "  " << si->second.infomap << "  " << si->second.ties;
                    cell = c.str();
                }
            }
            out << "| " << pad(cell, col_w);
        }
        out << "\n";
    }

    out << pad("Cohesion > Separation (%)", label_w);
    for (const auto& scheme : schemes) {
        std::ostringstream c;
        bool first = true;
        for (const auto& algo : {"leiden", "infomap"}) {
            auto ai = cohesion_gt_separation.find(algo);
            if (ai == cohesion_gt_separation.end())
                continue;
            auto si = ai->second.find(scheme);
            if (si == ai->second.end() || si->second.defined == 0)
                continue;
            if (!first)
                c << "  ";
            first = false;
            c << si->second.count << " (" << static_cast<int>(std::lround(si->second.pct)) << "%)";
        }
        std::string cell = c.str();
        out << "| " << pad(cell.empty() ? "-" : cell, col_w);
    }
    out << "\n";

    out << "\ncommunities per project (min/median/mean/max)\n";
    for (const auto& [algo, s] : communities_per_project) {
        out << pad("  " + algo, label_w) << format_double(s.min) << " / " << format_double(s.median) << " / "
            << format_double(s.mean) << " / " << format_double(s.max) << "\n";
    }
    out << "community sizes (min/median/mean/max)\n";
    for (const auto& [algo, s] : community_size) {
        out << pad("  " + algo, label_w) << format_double(s.min) << " / " << format_double(s.median) << " / "
            << format_double(s.mean) << " / " << format_double(s.max) << "\n";
    }
    return out.str();
}

} // namespace modsem
