// modsem command line front end. Deliberately a thin client of the C API in
// modsem/modsem.h: everything interesting happens in the shared library.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modsem/modsem.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitCorpusFailure = 2;

int run_analyze(const std::string& root, const std::string& manifest, const std::string& algorithms,
                const std::string& schemes, std::uint64_t seed, double resolution, int min_community_size,
                const std::string& vectors, const std::string& embeddings_dir, const std::string& stoplist,
                const std::string& keywords, bool unweighted, const std::string& out_dir, const std::string& format,
                int workers) {
    modsem_config* cfg = modsem_config_new();
    auto fail_config = [&](const char* context) {
        std::fprintf(stderr, "error: %s: %s\n", context, modsem_last_error());
        modsem_config_free(cfg);
        return kExitConfigError;
    };

    if (!root.empty() && modsem_config_add_project(cfg, nullptr, root.c_str()) != MODSEM_OK)
        return fail_config("project root");
    if (!manifest.empty() && modsem_config_load_manifest(cfg, manifest.c_str()) != MODSEM_OK)
        return fail_config("manifest");
    if (modsem_config_set_algorithms(cfg, algorithms.c_str()) != MODSEM_OK)
        return fail_config("--algorithms");
    if (modsem_config_set_schemes(cfg, schemes.c_str()) != MODSEM_OK)
        return fail_config("--schemes");
    modsem_config_set_seed(cfg, seed);
    if (modsem_config_set_resolution(cfg, resolution) != MODSEM_OK)
        return fail_config("--resolution");
    if (modsem_config_set_min_community_size(cfg, min_community_size) != MODSEM_OK)
        return fail_config("--min-community-size");
    if (!vectors.empty() && modsem_config_set_path(cfg, "vectors", vectors.c_str()) != MODSEM_OK)
        return fail_config("--vectors");
    if (!embeddings_dir.empty() && modsem_config_set_path(cfg, "embeddings-dir", embeddings_dir.c_str()) != MODSEM_OK)
        return fail_config("--embeddings-dir");
    if (!stoplist.empty() && modsem_config_set_path(cfg, "stoplist", stoplist.c_str()) != MODSEM_OK)
        return fail_config("--stoplist");
    if (!keywords.empty() && modsem_config_set_path(cfg, "keywords", keywords.c_str()) != MODSEM_OK)
        return fail_config("--keywords");
    modsem_config_set_unweighted(cfg, unweighted ? 1 : 0);
    if (modsem_config_set_path(cfg, "out", out_dir.c_str()) != MODSEM_OK)
        return fail_config("--out");
    if (modsem_config_set_format(cfg, format.c_str()) != MODSEM_OK)
        return fail_config("--format");
    if (modsem_config_set_workers(cfg, workers) != MODSEM_OK)
        return fail_config("--workers");

    modsem_result* result = nullptr;
    modsem_status status = modsem_run(cfg, &result);
    if (status != MODSEM_OK) {
        std::fprintf(stderr, "error: %s\n", modsem_last_error());
        modsem_config_free(cfg);
        return status == MODSEM_ERR_CONFIG ? kExitConfigError : kExitCorpusFailure;
    }

    size_t projects = modsem_result_project_count(result);
    size_t failed = modsem_result_failed_count(result);
    for (size_t i = 0; i < projects; ++i) {
        std::printf("%-32s %s\n", modsem_result_project_id(result, i), modsem_result_project_status(result, i));
    }
    std::printf("\n%s", modsem_result_summary(result));
    std::printf("\nanalyzed %zu project(s), %zu failed; outputs under %s\n", projects, failed, out_dir.c_str());

    modsem_result_free(result);
    modsem_config_free(cfg);
    return (failed == projects && projects > 0) ? kExitCorpusFailure : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modsem: software component identification via dependency-graph "
                 "community detection and semantic evaluation"};
    app.require_subcommand(1);

    std::string root, manifest;
    std::string algorithms = "leiden,infomap";
    std::string schemes = "tfidf";
    std::uint64_t seed = 42;
    double resolution = 1.0;
    int min_community_size = 4;
    std::string vectors, embeddings_dir, stoplist, keywords;
    bool unweighted = false;
    std::string out_dir = "modsem-out";
    std::string format = "json";
    int workers = 1;

    CLI::App* analyze = app.add_subcommand("analyze", "Analyze one project or a corpus manifest");
    analyze->add_option("root", root, "Project root directory");
    analyze->add_option("--manifest", manifest, "Corpus manifest: one `path` or `id<TAB>path` per line");
    analyze->add_option("--algorithms", algorithms, "Comma-separated: leiden,infomap")->capture_default_str();
    analyze->add_option("--schemes", schemes, "Comma-separated: tfidf,name-import,code-import,word-vector")
        ->capture_default_str();
    analyze->add_option("--seed", seed, "Community detection seed")->capture_default_str();
    analyze->add_option("--resolution", resolution, "Leiden resolution")->capture_default_str();
    analyze->add_option("--min-community-size", min_community_size, "Drop communities smaller than this")
        ->capture_default_str();
    analyze->add_option("--vectors", vectors, "Pretrained word vector file (word-vector scheme)");
    analyze->add_option("--embeddings-dir", embeddings_dir,
                        "Directory with <project>/<scheme>.vec files (import schemes)");
    analyze->add_option("--stoplist", stoplist, "Replacement stoplist file");
    analyze->add_option("--keywords", keywords, "Replacement keyword list file");
    analyze->add_flag("--unweighted", unweighted, "Treat every dependency edge as weight 1");
    analyze->add_option("--out", out_dir, "Output directory")->capture_default_str();
    analyze->add_option("--format", format, "Per-project report format: json|csv")->capture_default_str();
    analyze->add_option("--workers", workers, "Concurrent project analyses")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (root.empty() && manifest.empty()) {
        std::fprintf(stderr, "error: pass a project root or --manifest FILE\n");
        return kExitConfigError;
    }

    return run_analyze(root, manifest, algorithms, schemes, seed, resolution, min_community_size, vectors,
                       embeddings_dir, stoplist, keywords, unweighted, out_dir, format, workers);
}
