#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modsem/community.hpp"
#include "modsem/embedding.hpp"
#include "modsem/graph.hpp"

namespace modsem {

struct CommunityGroup {
    int id;
    std::vector<std::string> nodes; // sorted
};

// Communities that survived the small-community filter.
struct CommunitySet {
    std::vector<CommunityGroup> communities;
    int min_size = 4;
    double retained_node_fraction = 0.0;

    bool empty() const { return communities.empty(); }
    std::size_t total_nodes() const;
};

// Drops communities with fewer than min_size nodes. An empty result is
// legal; downstream metrics then refuse individually.
CommunitySet filter_small(const Partition& p, int min_size = 4);

struct MetricDiagnostics {
    std::size_t zero_vector_pairs = 0; // cosine fell back to 0
};

// Cosine similarity with the zero-vector convention: any pair involving a
// zero vector has similarity 0 (counted in diagnostics by the callers).
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

struct CohesionResult {
    std::vector<std::pair<int, double>> per_community; // community id -> mean pairwise cosine
    double mean = 0.0;                                 // unweighted over communities
};

CohesionResult cohesion(const CommunitySet& cs, const EmbeddingMatrix& emb, MetricDiagnostics* diag = nullptr);

// Mean pairwise cosine between community centroids; needs >= 2 communities.
double separation(const CommunitySet& cs, const EmbeddingMatrix& emb, MetricDiagnostics* diag = nullptr);

struct SilhouetteResult {
    std::map<std::string, double> per_node;
    double mean = 0.0;
};

// Silhouette with cosine distance 1 - sim over the filtered universe.
SilhouetteResult silhouette(const CommunitySet& cs, const EmbeddingMatrix& emb, MetricDiagnostics* diag = nullptr);

// Pearson r between inter-community dependency weight (zero pairs included)
// and centroid cosine similarity, over all unordered community pairs.
// nullopt means undefined (zero variance in either variable).
std::optional<double> dep_sim_correlation(const UndirectedGraph& g, const CommunitySet& cs,
                                          const EmbeddingMatrix& emb, MetricDiagnostics* diag = nullptr);

} // namespace modsem
