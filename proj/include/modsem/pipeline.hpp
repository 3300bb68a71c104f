#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "modsem/community.hpp"
#include "modsem/embedding.hpp"
#include "modsem/report.hpp"

namespace modsem {

struct ProjectSpec {
    std::string id; // defaults to the root directory's name
    std::filesystem::path root;
};

struct RunConfig {
    std::vector<ProjectSpec> projects;
    std::vector<Algorithm> algorithms{Algorithm::Leiden, Algorithm::Infomap};
    std::vector<Scheme> schemes{Scheme::Tfidf};
    CDParams params;
    int min_community_size = 4;
    bool unweighted = false;

    std::optional<std::filesystem::path> stoplist_path;
    std::optional<std::filesystem::path> keywords_path;
    std::optional<std::filesystem::path> vectors_path;    // word-vector scheme
    std::optional<std::filesystem::path> embeddings_dir;  // name-import / code-import
    std::filesystem::path output_dir;
    std::string format = "json"; // per-project report format: json | csv
    int workers = 1;

    // Throws ConfigError on an unusable configuration (no projects, schemes
    // without their input files, bad format, ...).
    void validate() const;
};

// Manifest: one project per line, either `path` or `id<TAB>path`; '#'
// comments. Relative paths resolve against the manifest's directory.
std::vector<ProjectSpec> load_manifest(const std::filesystem::path& file);

struct ProjectOutcome {
    ProjectSpec project;
    bool failed = false;
    std::string failure;
    std::vector<MetricsReport> reports; // one per algorithm x scheme
    // Exports for emit_outputs, kept per algorithm / scheme.
    std::map<std::string, Partition> partitions;              // algorithm -> partition
    std::map<std::string, double> qualities;                  // algorithm -> Q or L
    std::map<std::string, EmbeddingMatrix> embeddings;        // scheme -> matrix
    std::vector<std::string> diagnostics;
};

// Full per-project analysis: extract, symmetrize, detect communities per
// algorithm, build embeddings per scheme, filter, compute all four metrics.
// Throws only on total project failure; per-metric problems are recorded in
// the reports with reason codes.
ProjectOutcome analyze_project(const RunConfig& cfg, const ProjectSpec& project);

struct RunResult {
    std::vector<ProjectOutcome> outcomes;
    AggregateReport aggregate_report;
    int failed_count = 0;
};

// Runs the corpus (possibly with several workers), aggregates and writes
// all outputs under cfg.output_dir.
RunResult run(const RunConfig& cfg);

// Writes per-project reports, partition files, embedding exports and the
// aggregate table (json + plain text) under cfg.output_dir.
void emit_outputs(const RunResult& result, const RunConfig& cfg);

} // namespace modsem
