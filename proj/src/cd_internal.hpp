#pragma once

// Internal machinery shared by the Leiden and Infomap searches. Both run
// Louvain-style local moving + aggregation over an indexed graph; they
// differ in the objective (modularity vs. map equation) and in whether the
// refinement phase runs between moving and aggregation.

#include <cstdint>
#include <string>
#include <vector>

#include "modsem/graph.hpp"

namespace modsem::cd {

// Dense-index view of an undirected graph. Node i corresponds to the i-th
// name in sorted order; aggregated levels carry no names. Self-loops only
// appear on aggregated levels.
struct LevelGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj; // self excluded
    std::vector<double> self_weight;
    std::vector<double> strength; // sum of incident weights, self counted twice
    double m = 0;                 // total edge weight, self-loops once

    static LevelGraph from_graph(const UndirectedGraph& g, std::vector<std::string>* names_out);
};

// Community bookkeeping over one level. Slots may die (size 0) as nodes
// move; ids stay stable within a level so tie-breaking is deterministic.
struct CommState {
    std::vector<int> comm;    // node -> slot
    std::vector<double> vol;  // per slot: sum of member strengths
    std::vector<double> cut;  // per slot: weight to outside, self excluded
    std::vector<int> size;    // per slot: member count
    double total_cut = 0;

    static CommState from_assignment(const LevelGraph& g, const std::vector<int>& assignment);
    int live_count() const;

    // Moves v into `target` (-1 = fresh slot), updating vol/cut/size.
    // w_to_current / w_to_target are v's edge weights into the communities.
    int apply_move(const LevelGraph& g, std::uint32_t v, int target, double w_to_current, double w_to_target);
};

class Objective {
public:
    virtual ~Objective() = default;
    // Gain (positive = better) of moving v from its community into `target`
    // (-1 = a fresh empty community).
    virtual double move_gain(const LevelGraph& g, const CommState& s, std::uint32_t v, int target,
                             double w_to_current, double w_to_target) const = 0;
    // Score to maximize: Q for modularity, -L for the map equation.
    virtual double score(const LevelGraph& g, const CommState& s) const = 0;
};

class ModularityObjective final : public Objective {
public:
    explicit ModularityObjective(double resolution) : gamma_(resolution) {}
    double move_gain(const LevelGraph&, const CommState&, std::uint32_t, int, double, double) const override;
    double score(const LevelGraph&, const CommState&) const override;

private:
    double gamma_;
};

class MapEquationObjective final : public Objective {
public:
    double move_gain(const LevelGraph&, const CommState&, std::uint32_t, int, double, double) const override;
    double score(const LevelGraph&, const CommState&) const override;
};

// x * log2(x) with plogp(x <= 0) = 0; the map equation's workhorse.
double plogp2(double x);

// Deterministic RNG with hand-rolled shuffle and draws so results do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next_u64();
    std::uint64_t next_below(std::uint64_t bound); // uniform in [0, bound)
    double next_unit();                            // uniform in [0, 1)
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(next_below(i))]);
    }

private:
    std::uint64_t state_;
};

struct SearchOptions {
    double tolerance = 1e-9;
    int max_sweeps = 100;
    bool refine = false;       // Leiden refinement phase
    double resolution = 1.0;   // connectivity scale used by refinement
    double theta = 0.01;       // refinement randomness
};

// Full multi-level search. Returns the flat assignment (dense ids by first
// occurrence in node-index order). Local node-move optimality at the flat
// level holds on return; with opts.refine the caller still has to run the
// connectivity split (leiden() does).
std::vector<int> multilevel_search(const LevelGraph& g0, const Objective& obj, Rng& rng, const SearchOptions& opts);

// One local-moving round to queue exhaustion; returns number of moves.
std::size_t local_move(const LevelGraph& g, CommState& s, const Objective& obj, Rng& rng, double tolerance);

// Splits communities that do not induce connected subgraphs into their
// components. Returns the number of extra communities created.
std::size_t split_disconnected(const LevelGraph& g, std::vector<int>& assignment);

std::vector<int> renumber_dense(const std::vector<int>& assignment);

} // namespace modsem::cd
