#include "modsem/modsem.h"

#include <fstream>
#include <sstream>
#include <string>

#include "modsem/community.hpp"
#include "modsem/errors.hpp"
#include "modsem/extract.hpp"
#include "modsem/graph.hpp"
#include "modsem/graph_io.hpp"
#include "modsem/pipeline.hpp"

// Opaque handle definitions. Each wraps the C++ core type plus whatever
// metadata the C surface needs to hand back.

struct modsem_graph {
    modsem::DependencyGraph graph;
};

struct modsem_partition {
    modsem::Partition partition;
    std::string algorithm;
    uint64_t seed = 0;
    double resolution = 1.0;
    double quality = 0.0;
};

struct modsem_config {
    modsem::RunConfig config;
};

struct modsem_result {
    modsem::RunResult result;
    std::string summary;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) {
    t_last_error = msg;
}

template <typename Fn>
modsem_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return MODSEM_OK;
    } catch (const modsem::ConfigError& e) {
        set_error(e.what());
        return MODSEM_ERR_CONFIG;
    } catch (const modsem::ParseError& e) {
        set_error(e.what());
        return MODSEM_ERR_PARSE;
    } catch (const modsem::EmptyProjectError& e) {
        set_error(e.what());
        return MODSEM_ERR_EMPTY_PROJECT;
    } catch (const modsem::IoError& e) {
        set_error(e.what());
        return MODSEM_ERR_IO;
    } catch (const modsem::DomainError& e) {
        set_error(e.what());
        return MODSEM_ERR_DOMAIN;
    } catch (const std::exception& e) {
        set_error(e.what());
        return MODSEM_ERR_INTERNAL;
    }
}

modsem_status require(bool ok, const char* what) {
    if (!ok) {
        set_error(std::string("invalid argument: ") + what);
        return MODSEM_ERR_INVALID_ARGUMENT;
    }
    return MODSEM_OK;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

} // namespace

extern "C" {

const char* modsem_version(void) {
    return "0.1.0";
}

const char* modsem_last_error(void) {
    return t_last_error.c_str();
}

modsem_status modsem_graph_extract(const char* project_root, modsem_graph** out) {
    if (auto s = require(project_root && out, "project_root and out must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        auto result = modsem::extract_dependencies(project_root);
        *out = new modsem_graph{std::move(result.graph)};
    });
}

modsem_status modsem_graph_read(const char* path, modsem_graph** out) {
    if (auto s = require(path && out, "path and out must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] { *out = new modsem_graph{modsem::read_graph(path)}; });
}

modsem_status modsem_graph_write(const modsem_graph* g, const char* path) {
    if (auto s = require(g && path, "graph and path must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] { modsem::write_graph(g->graph, path); });
}

size_t modsem_graph_node_count(const modsem_graph* g) {
    return g ? g->graph.node_count() : 0;
}

size_t modsem_graph_edge_count(const modsem_graph* g) {
    return g ? g->graph.edge_count() : 0;
}

void modsem_graph_free(modsem_graph* g) {
    delete g;
}

modsem_status modsem_detect(const modsem_graph* g, const char* algorithm, uint64_t seed, double resolution,
                            modsem_partition** out) {
    if (auto s = require(g && algorithm && out, "graph, algorithm and out must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        modsem::Algorithm algo = modsem::algorithm_from_string(algorithm);
        modsem::CDParams params;
        params.seed = seed;
        params.resolution = resolution;
        modsem::UndirectedGraph u = modsem::symmetrize(g->graph);
        modsem::Partition p = modsem::detect_communities(u, algo, params);
        double quality = algo == modsem::Algorithm::Leiden ? modsem::modularity(u, p, resolution)
                                                           : modsem::map_equation(u, p);
        *out = new modsem_partition{std::move(p), algorithm, seed, resolution, quality};
    });
}

size_t modsem_partition_community_count(const modsem_partition* p) {
    return p ? p->partition.community_count() : 0;
}

int modsem_partition_community_of(const modsem_partition* p, const char* node) {
    if (!p || !node)
        return -1;
    const auto& assignment = p->partition.assignment();
    auto it = assignment.find(node);
    return it == assignment.end() ? -1 : it->second;
}

modsem_status modsem_partition_write(const modsem_partition* p, const char* path) {
    if (auto s = require(p && path, "partition and path must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        std::ofstream out(path);
        if (!out)
            throw modsem::IoError(std::string("cannot write partition file ") + path);
        out << "# algorithm: " << p->algorithm << "\n";
        out << "# seed: " << p->seed << "\n";
        out << "# resolution: " << p->resolution << "\n";
        out << "# quality: " << p->quality << "\n";
        for (const auto& [node, c] : p->partition.assignment())
            out << node << '\t' << c << '\n';
        if (!out)
            throw modsem::IoError(std::string("write failed for ") + path);
    });
}

void modsem_partition_free(modsem_partition* p) {
    delete p;
}

modsem_config* modsem_config_new(void) {
    return new modsem_config{};
}

void modsem_config_free(modsem_config* c) {
    delete c;
}

modsem_status modsem_config_add_project(modsem_config* c, const char* id, const char* root) {
    if (auto s = require(c && root, "config and root must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        modsem::ProjectSpec spec;
        spec.root = root;
        spec.id = id ? id : spec.root.filename().string();
        if (spec.id.empty())
            throw modsem::ConfigError("project id must be non-empty (pass one explicitly)");
        c->config.projects.push_back(std::move(spec));
    });
}

modsem_status modsem_config_load_manifest(modsem_config* c, const char* path) {
    if (auto s = require(c && path, "config and path must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        for (auto& spec : modsem::load_manifest(path))
            c->config.projects.push_back(std::move(spec));
    });
}

modsem_status modsem_config_set_algorithms(modsem_config* c, const char* csv) {
    if (auto s = require(c && csv, "config and csv must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        std::vector<modsem::Algorithm> algos;
        for (const auto& name : split_csv(csv))
            algos.push_back(modsem::algorithm_from_string(name));
        if (algos.empty())
            throw modsem::ConfigError("algorithm list is empty");
        c->config.algorithms = std::move(algos);
    });
}

modsem_status modsem_config_set_schemes(modsem_config* c, const char* csv) {
    if (auto s = require(c && csv, "config and csv must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        std::vector<modsem::Scheme> schemes;
        for (const auto& name : split_csv(csv))
            schemes.push_back(modsem::scheme_from_string(name));
        if (schemes.empty())
            throw modsem::ConfigError("scheme list is empty");
        c->config.schemes = std::move(schemes);
    });
}

void modsem_config_set_seed(modsem_config* c, uint64_t seed) {
    if (c)
        c->config.params.seed = seed;
}

modsem_status modsem_config_set_resolution(modsem_config* c, double resolution) {
    if (auto s = require(c != nullptr, "config must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        if (resolution <= 0)
            throw modsem::ConfigError("resolution must be positive");
        c->config.params.resolution = resolution;
    });
}

modsem_status modsem_config_set_min_community_size(modsem_config* c, int min_size) {
    if (auto s = require(c != nullptr, "config must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        if (min_size < 1)
            throw modsem::ConfigError("min community size must be >= 1");
        c->config.min_community_size = min_size;
    });
}

modsem_status modsem_config_set_path(modsem_config* c, const char* key, const char* value) {
    if (auto s = require(c && key && value, "config, key and value must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        std::string k = key;
        if (k == "stoplist")
            c->config.stoplist_path = value;
        else if (k == "keywords")
            c->config.keywords_path = value;
        else if (k == "vectors")
            c->config.vectors_path = value;
        else if (k == "embeddings-dir")
            c->config.embeddings_dir = value;
        else if (k == "out")
            c->config.output_dir = value;
        else
            throw modsem::ConfigError("unknown path key '" + k + "'");
    });
}

modsem_status modsem_config_set_format(modsem_config* c, const char* format) {
    if (auto s = require(c && format, "config and format must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        std::string f = format;
        if (f != "json" && f != "csv")
            throw modsem::ConfigError("unknown report format '" + f + "'");
        c->config.format = f;
    });
}

void modsem_config_set_unweighted(modsem_config* c, int unweighted) {
    if (c)
        c->config.unweighted = unweighted != 0;
}

modsem_status modsem_config_set_workers(modsem_config* c, int workers) {
    if (auto s = require(c != nullptr, "config must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        if (workers < 1)
            throw modsem::ConfigError("worker count must be >= 1");
        c->config.workers = workers;
    });
}

modsem_status modsem_run(const modsem_config* c, modsem_result** out) {
    if (auto s = require(c && out, "config and out must be non-null"); s != MODSEM_OK)
        return s;
    return guarded([&] {
        auto r = new modsem_result{modsem::run(c->config), ""};
        r->summary = r->result.aggregate_report.to_text();
        *out = r;
    });
}

size_t modsem_result_project_count(const modsem_result* r) {
    return r ? r->result.outcomes.size() : 0;
}

size_t modsem_result_failed_count(const modsem_result* r) {
    return r ? static_cast<size_t>(r->result.failed_count) : 0;
}

const char* modsem_result_project_id(const modsem_result* r, size_t index) {
    if (!r || index >= r->result.outcomes.size())
        return nullptr;
    return r->result.outcomes[index].project.id.c_str();
}

const char* modsem_result_project_status(const modsem_result* r, size_t index) {
    if (!r || index >= r->result.outcomes.size())
        return nullptr;
    const auto& out = r->result.outcomes[index];
    return out.failed ? out.failure.c_str() : "ok";
}

const char* modsem_result_summary(const modsem_result* r) {
    return r ? r->summary.c_str() : nullptr;
}

void modsem_result_free(modsem_result* r) {
    delete r;
}

} // extern "C"
