#include "modsem/community.hpp"

#include <algorithm>
#include <numeric>

#include "cd_internal.hpp"
#include "modsem/errors.hpp"

namespace modsem {

Partition::Partition(const std::map<std::string, int>& assignment) {
    // Renumber to dense canonical ids: community 0 is the one containing the
    // lexicographically smallest node, and so on.
    std::map<int, int> remap;
    int next = 0;
    for (const auto& [node, raw] : assignment) {
        auto [it, inserted] = remap.emplace(raw, next);
        if (inserted)
            ++next;
        assignment_[node] = it->second;
    }
    community_count_ = static_cast<std::size_t>(next);
}

int Partition::community_of(const std::string& node) const {
    auto it = assignment_.find(node);
    if (it == assignment_.end())
        throw DomainError("node not in partition: " + node);
    return it->second;
}

std::vector<std::vector<std::string>> Partition::groups() const {
    std::vector<std::vector<std::string>> out(community_count_);
    for (const auto& [node, c] : assignment_)
        out[c].push_back(node);
    return out; // members already sorted: assignment_ iterates by name
}

std::string to_string(Algorithm a) {
    return a == Algorithm::Leiden ? "leiden" : "infomap";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "leiden")
        return Algorithm::Leiden;
    if (name == "infomap")
        return Algorithm::Infomap;
    throw ConfigError("unknown algorithm '" + name + "' (expected leiden or infomap)");
}

namespace {

// Builds the indexed view and the dense assignment, checking that the
// partition covers exactly the graph's nodes.
std::pair<cd::LevelGraph, std::vector<int>> index_with_assignment(const UndirectedGraph& g, const Partition& p) {
    if (p.node_count() != g.node_count())
        throw DomainError("partition covers " + std::to_string(p.node_count()) + " nodes, graph has " +
                          std::to_string(g.node_count()));
    std::vector<std::string> names;
    cd::LevelGraph lg = cd::LevelGraph::from_graph(g, &names);
    std::vector<int> assignment(lg.n);
    for (std::size_t i = 0; i < names.size(); ++i)
        assignment[i] = p.community_of(names[i]); // throws if a node is missing
    return {std::move(lg), std::move(assignment)};
}

Partition partition_from_flat(const std::vector<std::string>& names, const std::vector<int>& flat) {
    std::map<std::string, int> assignment;
    for (std::size_t i = 0; i < names.size(); ++i)
        assignment[names[i]] = flat[i];
    return Partition(assignment);
}

} // namespace

double modularity(const UndirectedGraph& g, const Partition& p, double resolution) {
    auto [lg, assignment] = index_with_assignment(g, p);
    if (lg.m <= 0)
        throw DomainError("modularity undefined: graph has no edge weight");
    cd::CommState state = cd::CommState::from_assignment(lg, cd::renumber_dense(assignment));
    return cd::ModularityObjective(resolution).score(lg, state);
}

double map_equation(const UndirectedGraph& g, const Partition& p) {
    auto [lg, assignment] = index_with_assignment(g, p);
    if (lg.n == 1)
        return 0.0; // degenerate single-node graph: nothing to encode
    for (std::size_t v = 0; v < lg.n; ++v) {
        if (lg.strength[v] <= 0)
            throw DomainError("map equation undefined with isolated nodes present; strip them first");
    }
    cd::CommState state = cd::CommState::from_assignment(lg, cd::renumber_dense(assignment));
    cd::MapEquationObjective obj;
    double core = -obj.score(lg, state);
    double node_term = 0;
    double two_m = 2 * lg.m;
    for (std::size_t v = 0; v < lg.n; ++v)
        node_term += cd::plogp2(lg.strength[v] / two_m);
    return core - node_term;
}

Partition leiden(const UndirectedGraph& g, const CDParams& params) {
    if (g.node_count() == 0)
        throw DomainError("leiden requires a non-empty graph");
    std::vector<std::string> names;
    cd::LevelGraph lg = cd::LevelGraph::from_graph(g, &names);

    std::vector<int> flat(lg.n);
    std::iota(flat.begin(), flat.end(), 0);
    if (lg.m > 0) {
        cd::ModularityObjective obj(params.resolution);
        cd::Rng rng(params.seed);
        cd::SearchOptions opts;
        opts.tolerance = params.tolerance;
        opts.max_sweeps = params.max_sweeps;
        opts.refine = true;
        opts.resolution = params.resolution;

        // Alternate search and connectivity splitting until stable. Splits
        // strictly increase Q, so this terminates.
        flat = cd::multilevel_search(lg, obj, rng, opts);
        while (cd::split_disconnected(lg, flat) > 0) {
            cd::CommState state = cd::CommState::from_assignment(lg, cd::renumber_dense(flat));
            if (cd::local_move(lg, state, obj, rng, opts.tolerance) == 0) {
                flat = cd::renumber_dense(state.comm);
                break;
            }
            flat = cd::renumber_dense(state.comm);
        }
    }
    return partition_from_flat(names, flat);
}

Partition infomap(const UndirectedGraph& g, const CDParams& params) {
    if (g.node_count() == 0)
        throw DomainError("infomap requires a non-empty graph");
    std::vector<std::string> names;
    cd::LevelGraph lg = cd::LevelGraph::from_graph(g, &names);
    if (lg.m <= 0)
        throw DomainError("infomap undefined on an all-isolated graph");
    for (std::size_t v = 0; v < lg.n; ++v) {
        if (lg.strength[v] <= 0)
            throw DomainError("infomap requires a graph free of isolated nodes; strip them first");
    }

    cd::MapEquationObjective obj;
    cd::Rng rng(params.seed);
    cd::SearchOptions opts;
    opts.tolerance = params.tolerance;
    opts.max_sweeps = params.max_sweeps;
    opts.refine = false;

    std::vector<int> flat = cd::multilevel_search(lg, obj, rng, opts);
    return partition_from_flat(names, flat);
}

Partition detect_communities(const UndirectedGraph& g, Algorithm algo, const CDParams& params) {
    if (algo == Algorithm::Leiden)
        return leiden(g, params);

    // Infomap path: run on the non-isolated core, then report stripped
    // nodes back as singleton communities.
    UndirectedGraph core;
    std::vector<std::string> isolated;
    for (const auto& n : g.nodes()) {
        if (g.strength(n) > 0)
            core.add_node(n);
        else
            isolated.push_back(n);
    }
    for (const auto& [edge, w] : g.edges())
        core.add_edge(edge.first, edge.second, w);

    if (core.node_count() == 0)
        throw DomainError("infomap undefined on an all-isolated graph");

    Partition core_partition = infomap(core, params);
    std::map<std::string, int> assignment = core_partition.assignment();
    int next = static_cast<int>(core_partition.community_count());
    for (const auto& n : isolated)
        assignment[n] = next++;
    return Partition(assignment);
}

bool communities_connected(const UndirectedGraph& g, const Partition& p) {
    auto [lg, assignment] = index_with_assignment(g, p);
    std::vector<int> flat = assignment;
    return cd::split_disconnected(lg, flat) == 0;
}

} // namespace modsem
