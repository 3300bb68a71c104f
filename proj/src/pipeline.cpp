#include "modsem/pipeline.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <set>
#include <thread>

#include "modsem/errors.hpp"
#include "modsem/extract.hpp"
#include "modsem/graph_io.hpp"
#include "modsem/metrics.hpp"
#include "modsem/tokens.hpp"

namespace modsem {

namespace fs = std::filesystem;

void RunConfig::validate() const {
    if (projects.empty())
        throw ConfigError("no projects given (pass a root directory or --manifest)");
    if (algorithms.empty())
        throw ConfigError("at least one algorithm is required");
    if (schemes.empty())
        throw ConfigError("at least one scheme is required");
    if (format != "json" && format != "csv")
        throw ConfigError("unknown report format '" + format + "' (expected json or csv)");
    if (params.resolution <= 0)
        throw ConfigError("resolution must be positive");
    if (params.max_sweeps < 1)
        throw ConfigError("max sweeps must be positive");
    if (params.tolerance < 0)
        throw ConfigError("tolerance must be non-negative");
    if (min_community_size < 1)
        throw ConfigError("min community size must be >= 1");
    if (workers < 1)
        throw ConfigError("worker count must be >= 1");
    if (output_dir.empty())
        throw ConfigError("output directory is required");

    for (Scheme s : schemes) {
        if (s == Scheme::WordVector && !vectors_path)
            throw ConfigError("scheme word-vector needs --vectors FILE");
        if ((s == Scheme::NameImport || s == Scheme::CodeImport) && !embeddings_dir)
            throw ConfigError("scheme " + to_string(s) + " needs --embeddings-dir DIR");
    }
    std::set<std::string> ids;
    for (const auto& p : projects) {
        if (!ids.insert(p.id).second)
            throw ConfigError("duplicate project id '" + p.id + "'");
    }
}

std::vector<ProjectSpec> load_manifest(const fs::path& file) {
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open manifest " + file.string());
    std::vector<ProjectSpec> projects;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        ProjectSpec spec;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            spec.root = line;
        } else {
            spec.id = line.substr(0, tab);
            spec.root = line.substr(tab + 1);
            if (spec.id.empty())
                throw ParseError("empty project id in manifest", lineno);
        }
        if (spec.root.is_relative())
            spec.root = file.parent_path() / spec.root;
        if (spec.id.empty())
            spec.id = spec.root.filename().string();
        projects.push_back(std::move(spec));
    }
    if (projects.empty())
        throw ConfigError("manifest " + file.string() + " lists no projects");
    return projects;
}

namespace {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

struct SchemeInputs {
    TermFilter filter;
    std::optional<WordVectorTable> word_vectors;
};

EmbeddingMatrix build_scheme_matrix(Scheme scheme, const RunConfig& cfg, const ProjectSpec& project,
                                    const ExtractionResult& extraction, const SchemeInputs& inputs,
                                    EmbeddingDiagnostics* diag) {
    switch (scheme) {
    case Scheme::Tfidf: {
        std::vector<TokenDocument> docs;
        docs.reserve(extraction.units.size());
        for (const auto& unit : extraction.units)
            docs.push_back(identifier_tokens(unit.qualified_name, unit.raw_text, inputs.filter, /*lemma=*/true));
        return build_tfidf(docs, 1000, diag);
    }
    case Scheme::WordVector: {
        std::vector<TokenDocument> docs;
        docs.reserve(extraction.units.size());
        for (const auto& unit : extraction.units)
            docs.push_back(identifier_tokens(unit.qualified_name, unit.raw_text, inputs.filter, /*lemma=*/false));
        return embed_documents(docs, *inputs.word_vectors, diag);
    }
    case Scheme::NameImport:
    case Scheme::CodeImport: {
        fs::path file = *cfg.embeddings_dir / project.id / (to_string(scheme) + ".vec");
        return import_embeddings(file, extraction.graph.nodes(), scheme, diag);
    }
    }
    throw DomainError("unreachable scheme");
}

} // namespace

ProjectOutcome analyze_project(const RunConfig& cfg, const ProjectSpec& project) {
    ProjectOutcome outcome;
    outcome.project = project;

    SchemeInputs inputs;
    inputs.filter = TermFilter::with_files(cfg.keywords_path ? &*cfg.keywords_path : nullptr,
                                           cfg.stoplist_path ? &*cfg.stoplist_path : nullptr);
    if (cfg.vectors_path) {
        EmbeddingDiagnostics vdiag;
        inputs.word_vectors = load_word_vectors(*cfg.vectors_path, &vdiag);
        for (auto& w : vdiag.warnings)
            outcome.diagnostics.push_back(std::move(w));
    }

    ExtractionResult extraction = extract_dependencies(project.root);
    for (const auto& d : extraction.diagnostics)
        outcome.diagnostics.push_back(d.file + ": " + d.message);

    UndirectedGraph undirected = symmetrize(extraction.graph);
    if (cfg.unweighted)
        undirected = undirected.unit_weights();

    // Communities per algorithm (independent of scheme).
    std::map<std::string, CommunitySet> filtered;
    std::map<std::string, std::string> algo_errors;
    for (Algorithm algo : cfg.algorithms) {
        std::string name = to_string(algo);
        try {
            Partition p = detect_communities(undirected, algo, cfg.params);
            double quality = algo == Algorithm::Leiden ? modularity(undirected, p, cfg.params.resolution)
                                                       : map_equation(undirected, p);
            filtered.emplace(name, filter_small(p, cfg.min_community_size));
            outcome.partitions.emplace(name, std::move(p));
            outcome.qualities.emplace(name, quality);
        } catch (const Error& e) {
            algo_errors.emplace(name, e.what());
            outcome.diagnostics.push_back(name + ": " + e.what());
        }
    }

    // Embeddings per scheme (independent of algorithm).
    std::map<std::string, EmbeddingMatrix> matrices;
    std::map<std::string, std::string> scheme_errors;
    for (Scheme scheme : cfg.schemes) {
        std::string name = to_string(scheme);
        try {
            EmbeddingDiagnostics diag;
            EmbeddingMatrix m = build_scheme_matrix(scheme, cfg, project, extraction, inputs, &diag);
            m.validate(&extraction.graph.nodes());
            for (const auto& node : diag.zero_vector_nodes)
                outcome.diagnostics.push_back(name + ": zero vector for " + node);
            for (auto& w : diag.warnings)
                outcome.diagnostics.push_back(name + ": " + std::move(w));
            matrices.emplace(name, std::move(m));
        } catch (const Error& e) {
            scheme_errors.emplace(name, e.what());
        }
    }
    outcome.embeddings = matrices;

    for (Algorithm algo : cfg.algorithms) {
        std::string algo_name = to_string(algo);
        for (Scheme scheme : cfg.schemes) {
            std::string scheme_name = to_string(scheme);
            MetricsReport report;
            report.project_id = project.id;
            report.algorithm = algo_name;
            report.scheme = scheme_name;

            auto fi = filtered.find(algo_name);
            auto mi = matrices.find(scheme_name);
            if (fi == filtered.end()) {
                report.status = algo_name + ": " + algo_errors.at(algo_name);
            } else if (mi == matrices.end()) {
                report.status = scheme_name + ": " + scheme_errors.at(scheme_name);
            } else {
                const CommunitySet& cs = fi->second;
                const EmbeddingMatrix& emb = mi->second;
                report.community_count = static_cast<int>(cs.communities.size());
                for (const auto& c : cs.communities)
                    report.community_sizes.push_back(static_cast<int>(c.nodes.size()));
                report.retained_node_fraction = cs.retained_node_fraction;

                MetricDiagnostics mdiag;
                try {
                    CohesionResult coh = cohesion(cs, emb, &mdiag);
                    report.coh = coh.mean;
                    for (const auto& [id, value] : coh.per_community)
                        report.community_cohesion[id] = value;
                } catch (const Error& e) {
                    report.coh_reason = e.what();
                }
                try {
                    report.sep = separation(cs, emb, &mdiag);
                } catch (const Error& e) {
                    report.sep_reason = e.what();
                }
                try {
                    report.silhouette = silhouette(cs, emb, &mdiag).mean;
                } catch (const Error& e) {
                    report.silhouette_reason = e.what();
                }
                try {
                    auto r = dep_sim_correlation(undirected, cs, emb, &mdiag);
                    if (r)
                        report.dep_sim_r = *r;
                    else
                        report.dep_sim_r_reason = "undefined: zero variance across community pairs";
                } catch (const Error& e) {
                    report.dep_sim_r_reason = e.what();
                }
                if (mdiag.zero_vector_pairs > 0) {
                    outcome.diagnostics.push_back(algo_name + "/" + scheme_name + ": " +
                                                  std::to_string(mdiag.zero_vector_pairs) +
                                                  " cosine pairs involved a zero vector");
                }
            }
            outcome.reports.push_back(std::move(report));
        }
    }
    return outcome;
}

RunResult run(const RunConfig& cfg) {
    cfg.validate();

    RunResult result;
    result.outcomes.resize(cfg.projects.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= cfg.projects.size())
                return;
            ProjectOutcome& out = result.outcomes[i];
            try {
                out = analyze_project(cfg, cfg.projects[i]);
            } catch (const std::exception& e) {
                out.project = cfg.projects[i];
                out.failed = true;
                out.failure = e.what();
            }
        }
    };

    int thread_count = std::min<int>(cfg.workers, static_cast<int>(cfg.projects.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int t = 0; t < thread_count; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    std::vector<MetricsReport> all_reports;
    for (const auto& out : result.outcomes) {
        if (out.failed)
            ++result.failed_count;
        for (const auto& r : out.reports)
            all_reports.push_back(r);
    }
    result.aggregate_report = aggregate(all_reports);
    result.aggregate_report.project_count = static_cast<int>(cfg.projects.size());
    result.aggregate_report.failed_count = result.failed_count;
    for (const auto& out : result.outcomes) {
        if (out.failed)
            result.aggregate_report.failures.emplace_back(out.project.id, out.failure);
    }

    emit_outputs(result, cfg);
    return result;
}

namespace {

void write_partition_file(const fs::path& file, const Partition& p, const std::string& algorithm,
                          const RunConfig& cfg, double quality) {
    std::ofstream out(file);
    if (!out)
        throw IoError("cannot write partition file " + file.string());
    out << "# algorithm: " << algorithm << "\n";
    out << "# seed: " << cfg.params.seed << "\n";
    out << "# resolution: " << format_double(cfg.params.resolution) << "\n";
    out << "# quality: " << format_double(quality) << "\n";
    for (const auto& [node, c] : p.assignment())
        out << node << '\t' << c << '\n';
    if (!out)
        throw IoError("write failed for " + file.string());
}

void write_embedding_export(const fs::path& file, const CommunitySet& cs, const Partition& p,
                            const EmbeddingMatrix& emb) {
    std::ofstream out(file);
    if (!out)
        throw IoError("cannot write embedding export " + file.string());
    out << "node,community_id";
    for (std::size_t i = 1; i <= emb.dimension; ++i)
        out << ",v" << i;
    out << "\n";
    std::set<std::string> retained;
    for (const auto& c : cs.communities)
        retained.insert(c.nodes.begin(), c.nodes.end());
    for (const auto& node : retained) {
        out << node << ',' << p.community_of(node);
        for (double x : emb.vector_of(node))
            out << ',' << format_double(x);
        out << '\n';
    }
    if (!out)
        throw IoError("write failed for " + file.string());
}

} // namespace

void emit_outputs(const RunResult& result, const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());

    for (const auto& out : result.outcomes) {
        if (out.failed)
            continue;
        fs::path dir = cfg.output_dir / "projects" / out.project.id;
        fs::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create " + dir.string() + ": " + ec.message());

        for (const auto& [algo, partition] : out.partitions) {
            CommunitySet cs = filter_small(partition, cfg.min_community_size);
            write_partition_file(dir / (algo + ".partition.tsv"), partition, algo, cfg, out.qualities.at(algo));
            for (const auto& [scheme, emb] : out.embeddings)
                write_embedding_export(dir / (algo + "." + scheme + ".embedding.csv"), cs, partition, emb);
        }
        for (const auto& report : out.reports) {
            fs::path file = dir / (report.algorithm + "." + report.scheme + ".report." + cfg.format);
            std::ofstream rf(file);
            if (!rf)
                throw IoError("cannot write report " + file.string());
            if (cfg.format == "json")
                rf << report.to_json().dump(2) << "\n";
            else
                rf << MetricsReport::csv_header() << "\n" << report.to_csv_row() << "\n";
            if (!rf)
                throw IoError("write failed for " + file.string());
        }
    }

    {
        std::ofstream aj(cfg.output_dir / "aggregate.json");
        if (!aj)
            throw IoError("cannot write aggregate.json under " + cfg.output_dir.string());
        aj << result.aggregate_report.to_json().dump(2) << "\n";
    }
    {
        std::ofstream at(cfg.output_dir / "aggregate.txt");
        if (!at)
            throw IoError("cannot write aggregate.txt under " + cfg.output_dir.string());
        at << result.aggregate_report.to_text();
    }
}

} // namespace modsem
