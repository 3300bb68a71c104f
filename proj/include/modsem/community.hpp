#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modsem/graph.hpp"

namespace modsem {

// Total assignment of graph nodes to dense community ids 0..N-1. Ids are
// canonical: community k is the one whose lexicographically smallest member
// precedes that of community k+1.
class Partition {
public:
    Partition() = default;
    explicit Partition(const std::map<std::string, int>& assignment);

    int community_of(const std::string& node) const;
    std::size_t community_count() const { return community_count_; }
    std::size_t node_count() const { return assignment_.size(); }
    const std::map<std::string, int>& assignment() const { return assignment_; }

    // Community id -> sorted member names.
    std::vector<std::vector<std::string>> groups() const;

    bool operator==(const Partition&) const = default;

private:
    std::map<std::string, int> assignment_;
    std::size_t community_count_ = 0;
};

struct CDParams {
    std::uint64_t seed = 42;
    double resolution = 1.0; // Leiden only
    int max_sweeps = 100;
    double tolerance = 1e-9; // quality-gain convergence threshold
};

enum class Algorithm { Leiden, Infomap };
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

// Newman modularity Q = sum_c [ e_c/m - (d_c/2m)^2 ] in [-1, 1].
// Throws DomainError when m = 0 or when p does not cover exactly g's nodes.
double modularity(const UndirectedGraph& g, const Partition& p, double resolution = 1.0);

// Two-level map equation L(M) in bits for the undirected random walk with
// stationary visit rates proportional to node strength. Throws DomainError
// on isolated nodes (strip them first) or coverage mismatch.
double map_equation(const UndirectedGraph& g, const Partition& p);

// Leiden: modularity local moving with refinement and aggregation. The
// result is node-move optimal within `tolerance`, every community induces a
// connected subgraph, and isolated nodes come back as singletons.
Partition leiden(const UndirectedGraph& g, const CDParams& params = {});

// Map-equation minimization via Louvain-style local moving + aggregation
// with a seeded visit order. Requires a graph free of isolated nodes.
Partition infomap(const UndirectedGraph& g, const CDParams& params = {});

// Runs the requested algorithm; for Infomap, strips isolated nodes first
// and reports them back as singleton communities.
Partition detect_communities(const UndirectedGraph& g, Algorithm algo, const CDParams& params = {});

// True when every community of p induces a connected subgraph of g.
bool communities_connected(const UndirectedGraph& g, const Partition& p);

} // namespace modsem
