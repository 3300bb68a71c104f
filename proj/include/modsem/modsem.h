/*
 * modsem C API: class dependency graphs, community detection and the full
 * analysis pipeline behind opaque handles with error codes.
 *
 * Every function that can fail returns a modsem_status; on failure,
 * modsem_last_error() gives a thread-local message. Handles returned through
 * out-parameters are owned by the caller and released with the matching
 * *_free function.
 */
#ifndef MODSEM_H
#define MODSEM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum modsem_status {
    MODSEM_OK = 0,
    MODSEM_ERR_IO = 1,
    MODSEM_ERR_PARSE = 2,
    MODSEM_ERR_DOMAIN = 3,
    MODSEM_ERR_CONFIG = 4,
    MODSEM_ERR_EMPTY_PROJECT = 5,
    MODSEM_ERR_INVALID_ARGUMENT = 6,
    MODSEM_ERR_INTERNAL = 7
} modsem_status;

typedef struct modsem_graph modsem_graph;
typedef struct modsem_partition modsem_partition;
typedef struct modsem_config modsem_config;
typedef struct modsem_result modsem_result;

const char* modsem_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* modsem_last_error(void);

/* --- dependency graphs ------------------------------------------------- */

/* Parses the project tree and builds the weighted class dependency graph. */
modsem_status modsem_graph_extract(const char* project_root, modsem_graph** out);

/* Edge-list file I/O (source<TAB>target<TAB>weight, `node<TAB>-<TAB>0` for
 * isolated nodes, '#' comments). */
modsem_status modsem_graph_read(const char* path, modsem_graph** out);
modsem_status modsem_graph_write(const modsem_graph* g, const char* path);

size_t modsem_graph_node_count(const modsem_graph* g);
size_t modsem_graph_edge_count(const modsem_graph* g);
void modsem_graph_free(modsem_graph* g);

/* --- community detection ------------------------------------------------ */

/* algorithm: "leiden" or "infomap". Runs on the symmetrized graph. */
modsem_status modsem_detect(const modsem_graph* g, const char* algorithm, uint64_t seed, double resolution,
                            modsem_partition** out);

size_t modsem_partition_community_count(const modsem_partition* p);
/* Community id of a node, or -1 when the node is unknown. */
int modsem_partition_community_of(const modsem_partition* p, const char* node);
/* `node<TAB>community_id` lines with a header recording algorithm, seed,
 * resolution and the quality value. */
modsem_status modsem_partition_write(const modsem_partition* p, const char* path);
void modsem_partition_free(modsem_partition* p);

/* --- full analysis runs ------------------------------------------------- */

modsem_config* modsem_config_new(void);
void modsem_config_free(modsem_config* c);

/* id may be NULL: the directory name is used. */
modsem_status modsem_config_add_project(modsem_config* c, const char* id, const char* root);
modsem_status modsem_config_load_manifest(modsem_config* c, const char* path);
/* Comma-separated lists, e.g. "leiden,infomap" / "tfidf,word-vector". */
modsem_status modsem_config_set_algorithms(modsem_config* c, const char* csv);
modsem_status modsem_config_set_schemes(modsem_config* c, const char* csv);
void modsem_config_set_seed(modsem_config* c, uint64_t seed);
modsem_status modsem_config_set_resolution(modsem_config* c, double resolution);
modsem_status modsem_config_set_min_community_size(modsem_config* c, int min_size);
/* key: "stoplist", "keywords", "vectors", "embeddings-dir", "out". */
modsem_status modsem_config_set_path(modsem_config* c, const char* key, const char* value);
/* "json" or "csv". */
modsem_status modsem_config_set_format(modsem_config* c, const char* format);
void modsem_config_set_unweighted(modsem_config* c, int unweighted);
modsem_status modsem_config_set_workers(modsem_config* c, int workers);

/* Validates the configuration, analyzes every project, writes all outputs
 * under the configured directory and returns a result handle. Individual
 * project failures do not fail the run; inspect the result. */
modsem_status modsem_run(const modsem_config* c, modsem_result** out);

size_t modsem_result_project_count(const modsem_result* r);
size_t modsem_result_failed_count(const modsem_result* r);
const char* modsem_result_project_id(const modsem_result* r, size_t index);
/* "ok" or the failure reason. */
const char* modsem_result_project_status(const modsem_result* r, size_t index);
/* The aggregate table as aligned plain text. */
const char* modsem_result_summary(const modsem_result* r);
void modsem_result_free(modsem_result* r);

#ifdef __cplusplus
}
#endif

#endif /* MODSEM_H */
