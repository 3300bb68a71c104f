#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "cd_internal.hpp"
#include "modsem/errors.hpp"

namespace modsem::cd {

double plogp2(double x) {
    return x > 0 ? x * std::log2(x) : 0.0;
}

std::uint64_t Rng::next_u64() {
    // splitmix64; small state, solid diffusion, fully portable
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound <= 1)
        return 0;
    // rejection sampling keeps the draw unbiased
    std::uint64_t limit = ~0ULL - (~0ULL % bound);
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r >= limit);
    return r % bound;
}

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

LevelGraph LevelGraph::from_graph(const UndirectedGraph& g, std::vector<std::string>* names_out) {
    LevelGraph lg;
    std::vector<std::string> names(g.nodes().begin(), g.nodes().end()); // set: already sorted
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < names.size(); ++i)
        index[names[i]] = i;

    lg.n = names.size();
    lg.adj.resize(lg.n);
    lg.self_weight.assign(lg.n, 0.0);
    lg.strength.assign(lg.n, 0.0);
    for (const auto& [edge, w] : g.edges()) {
        std::uint32_t a = index[edge.first];
        std::uint32_t b = index[edge.second];
        lg.adj[a].emplace_back(b, w);
        lg.adj[b].emplace_back(a, w);
        lg.strength[a] += w;
        lg.strength[b] += w;
        lg.m += w;
    }
    if (names_out)
        *names_out = std::move(names);
    return lg;
}

CommState CommState::from_assignment(const LevelGraph& g, const std::vector<int>& assignment) {
    CommState s;
    s.comm = assignment;
    int slots = 0;
    for (int c : assignment)
        slots = std::max(slots, c + 1);
    s.vol.assign(slots, 0.0);
    s.cut.assign(slots, 0.0);
    s.size.assign(slots, 0);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        int c = assignment[v];
        s.vol[c] += g.strength[v];
        s.size[c] += 1;
        for (const auto& [u, w] : g.adj[v]) {
            if (assignment[u] != c)
                s.cut[c] += w;
        }
    }
    s.total_cut = std::accumulate(s.cut.begin(), s.cut.end(), 0.0);
    return s;
}

int CommState::live_count() const {
    int live = 0;
    for (int sz : size)
        live += sz > 0;
    return live;
}

int CommState::apply_move(const LevelGraph& g, std::uint32_t v, int target, double w_to_current, double w_to_target) {
    int from = comm[v];
    if (target < 0) {
        target = static_cast<int>(vol.size());
        vol.push_back(0.0);
        cut.push_back(0.0);
        size.push_back(0);
    }
    double s_v = g.strength[v];
    double self_v = g.self_weight.empty() ? 0.0 : g.self_weight[v];

    double cut_from_delta = -s_v + 2 * self_v + 2 * w_to_current;
    double cut_to_delta = s_v - 2 * self_v - 2 * w_to_target;
    vol[from] -= s_v;
    vol[target] += s_v;
    cut[from] += cut_from_delta;
    cut[target] += cut_to_delta;
    total_cut += cut_from_delta + cut_to_delta;
    size[from] -= 1;
    size[target] += 1;
    comm[v] = target;
    return target;
}

double ModularityObjective::move_gain(const LevelGraph& g, const CommState& s, std::uint32_t v, int target,
                                      double w_to_current, double w_to_target) const {
    double m = g.m;
    double s_v = g.strength[v];
    double vol_from = s.vol[s.comm[v]];           // includes v
    double vol_to = target < 0 ? 0.0 : s.vol[target]; // excludes v
    return (w_to_target - w_to_current) / m - gamma_ * s_v * (vol_to - vol_from + s_v) / (2 * m * m);
}

double ModularityObjective::score(const LevelGraph& g, const CommState& s) const {
    double q = 0;
    double two_m = 2 * g.m;
    for (std::size_t c = 0; c < s.vol.size(); ++c) {
        if (s.size[c] == 0)
            continue;
        double e_c = (s.vol[c] - s.cut[c]) / 2.0;
        q += e_c / g.m - gamma_ * (s.vol[c] / two_m) * (s.vol[c] / two_m);
    }
    return q;
}

namespace {

// Per-module part of the map equation in bits, with normalized exit rate
// q_c = cut_c/2m and visit rate p_c = vol_c/2m. The full core value is
//   plogp(sum q_c) + sum_c [ -2 plogp(q_c) + plogp(q_c + p_c) ];
// the per-node term -sum plogp(p_a) is constant under moves on one level.
double map_module_term(double q_c, double p_c) {
    return -2 * plogp2(q_c) + plogp2(q_c + p_c);
}

} // namespace

double MapEquationObjective::move_gain(const LevelGraph& g, const CommState& s, std::uint32_t v, int target,
                                       double w_to_current, double w_to_target) const {
    double two_m = 2 * g.m;
    double s_v = g.strength[v];
    double self_v = g.self_weight.empty() ? 0.0 : g.self_weight[v];
    int from = s.comm[v];

    double cut_from = s.cut[from], vol_from = s.vol[from];
    double cut_to = target < 0 ? 0.0 : s.cut[target];
    double vol_to = target < 0 ? 0.0 : s.vol[target];

    double cut_from_new = cut_from - s_v + 2 * self_v + 2 * w_to_current;
    double cut_to_new = cut_to + s_v - 2 * self_v - 2 * w_to_target;
    double vol_from_new = vol_from - s_v;
    double vol_to_new = vol_to + s_v;
    double total_cut_new = s.total_cut + (cut_from_new - cut_from) + (cut_to_new - cut_to);

    double before = plogp2(s.total_cut / two_m) + map_module_term(cut_from / two_m, vol_from / two_m) +
                    map_module_term(cut_to / two_m, vol_to / two_m);
    double after = plogp2(total_cut_new / two_m) + map_module_term(cut_from_new / two_m, vol_from_new / two_m) +
                   map_module_term(cut_to_new / two_m, vol_to_new / two_m);
    return before - after; // lower description length = positive gain
}

double MapEquationObjective::score(const LevelGraph& g, const CommState& s) const {
    double two_m = 2 * g.m;
    double l = plogp2(s.total_cut / two_m);
    for (std::size_t c = 0; c < s.vol.size(); ++c) {
        if (s.size[c] == 0)
            continue;
        l += map_module_term(s.cut[c] / two_m, s.vol[c] / two_m);
    }
    return -l;
}

std::size_t local_move(const LevelGraph& g, CommState& s, const Objective& obj, Rng& rng, double tolerance) {
    constexpr double kTieEps = 1e-12;

    std::vector<std::uint32_t> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::deque<std::uint32_t> queue(order.begin(), order.end());
    std::vector<char> in_queue(g.n, 1);

    std::vector<double> w_to(s.vol.size(), 0.0);
    std::vector<int> touched;
    std::size_t moves = 0;

    while (!queue.empty()) {
        std::uint32_t v = queue.front();
        queue.pop_front();
        in_queue[v] = 0;
        if (g.strength[v] <= 0)
            continue; // isolated nodes stay in their singleton

        if (w_to.size() < s.vol.size())
            w_to.resize(s.vol.size(), 0.0);
        touched.clear();
        for (const auto& [u, w] : g.adj[v]) {
            int c = s.comm[u];
            if (w_to[c] == 0.0)
                touched.push_back(c);
            w_to[c] += w;
        }
        int current = s.comm[v];
        double w_current = (static_cast<std::size_t>(current) < w_to.size()) ? w_to[current] : 0.0;

        std::sort(touched.begin(), touched.end());
        int best_target = current;
        double best_gain = 0.0;
        for (int c : touched) {
            if (c == current)
                continue;
            double gain = obj.move_gain(g, s, v, c, w_current, w_to[c]);
            if (gain > best_gain + kTieEps) {
                best_gain = gain;
                best_target = c;
            }
        }
        if (s.size[current] > 1) {
            double gain = obj.move_gain(g, s, v, -1, w_current, 0.0);
            if (gain > best_gain + kTieEps) {
                best_gain = gain;
                best_target = -1;
            }
        }

        if (best_gain > tolerance && best_target != current) {
            int target = s.apply_move(g, v, best_target, w_current, best_target < 0 ? 0.0 : w_to[best_target]);
            if (w_to.size() < s.vol.size())
                w_to.resize(s.vol.size(), 0.0);
            ++moves;
            for (const auto& [u, w] : g.adj[v]) {
                if (!in_queue[u] && s.comm[u] != target) {
                    queue.push_back(u);
                    in_queue[u] = 1;
                }
            }
        }
        for (int c : touched)
            w_to[c] = 0.0;
    }
    return moves;
}

namespace {

std::vector<std::vector<std::uint32_t>> members_by_slot(const CommState& s) {
    std::vector<std::vector<std::uint32_t>> members(s.vol.size());
    for (std::uint32_t v = 0; v < s.comm.size(); ++v)
        members[s.comm[v]].push_back(v);
    return members;
}

// Leiden refinement: within each community of `state`, greedily re-merge
// nodes from singletons, restricted to well-connected targets, picking among
// non-losing candidates with probability proportional to exp(gain / theta).
CommState refine_partition(const LevelGraph& g, const CommState& state, const Objective& obj, Rng& rng,
                           double resolution, double theta) {
    std::vector<int> singleton(g.n);
    std::iota(singleton.begin(), singleton.end(), 0);
    CommState refined = CommState::from_assignment(g, singleton);
    auto coarse_members = members_by_slot(state);
    auto refined_members = members_by_slot(refined);

    double two_m = 2 * g.m;
    std::vector<double> w_to(g.n, 0.0);

    for (std::size_t slot = 0; slot < coarse_members.size(); ++slot) {
        const auto& subset = coarse_members[slot];
        if (subset.size() < 2)
            continue;
        double vol_subset = state.vol[slot];

        std::vector<std::uint32_t> visit(subset);
        rng.shuffle(visit);

        for (std::uint32_t v : visit) {
            int own = refined.comm[v];
            if (refined.size[own] != 1)
                continue; // only merge nodes that are still alone

            double s_v = g.strength[v];
            double w_v_subset = 0;
            std::vector<int> touched;
            for (const auto& [u, w] : g.adj[v]) {
                if (state.comm[u] != static_cast<int>(slot))
                    continue;
                w_v_subset += w;
                int c = refined.comm[u];
                if (w_to[c] == 0.0)
                    touched.push_back(c);
                w_to[c] += w;
            }
            if (w_v_subset < resolution * s_v * (vol_subset - s_v) / two_m) {
                for (int c : touched)
                    w_to[c] = 0.0;
                continue; // v itself is not well connected within the subset
            }

            std::sort(touched.begin(), touched.end());
            std::vector<int> candidates;
            std::vector<double> gains;
            candidates.push_back(own); // staying alone is allowed with gain 0
            gains.push_back(0.0);
            for (int c : touched) {
                if (c == own)
                    continue;
                // candidate community must be well connected within subset
                double w_c_rest = 0;
                double vol_c = refined.vol[c];
                for (std::uint32_t x : refined_members[c]) {
                    for (const auto& [u, w] : g.adj[x]) {
                        if (state.comm[u] == static_cast<int>(slot) && refined.comm[u] != c)
                            w_c_rest += w;
                    }
                }
                if (w_c_rest < resolution * vol_c * (vol_subset - vol_c) / two_m)
                    continue;
                double gain = obj.move_gain(g, refined, v, c, 0.0, w_to[c]);
                if (gain >= 0.0) {
                    candidates.push_back(c);
                    gains.push_back(gain);
                }
            }

            if (candidates.size() > 1) {
                double max_gain = *std::max_element(gains.begin(), gains.end());
                std::vector<double> weights(gains.size());
                double total = 0;
                for (std::size_t i = 0; i < gains.size(); ++i) {
                    weights[i] = std::exp((gains[i] - max_gain) / theta);
                    total += weights[i];
                }
                double r = rng.next_unit() * total;
                std::size_t pick = 0;
                double acc = 0;
                for (std::size_t i = 0; i < weights.size(); ++i) {
                    acc += weights[i];
                    if (r < acc) {
                        pick = i;
                        break;
                    }
                }
                int target = candidates[pick];
                if (target != own) {
                    refined.apply_move(g, v, target, 0.0, w_to[target]);
                    refined_members[target].push_back(v);
                    refined_members[own].clear();
                }
            }
            for (int c : touched)
                w_to[c] = 0.0;
        }
    }
    return refined;
}

struct Aggregated {
    LevelGraph graph;
    std::vector<std::uint32_t> node_map; // old node -> new node
    std::vector<int> slot_of_new;        // new node -> old slot
};

Aggregated aggregate(const LevelGraph& g, const CommState& grouping) {
    Aggregated out;
    std::vector<int> new_id(grouping.vol.size(), -1);
    int next = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        int slot = grouping.comm[v];
        if (new_id[slot] < 0) {
            new_id[slot] = next++;
            out.slot_of_new.push_back(slot);
        }
    }
    // note: first-occurrence order over node indices keeps ids canonical

    out.node_map.resize(g.n);
    for (std::uint32_t v = 0; v < g.n; ++v)
        out.node_map[v] = static_cast<std::uint32_t>(new_id[grouping.comm[v]]);

    LevelGraph& ag = out.graph;
    ag.n = static_cast<std::size_t>(next);
    ag.adj.resize(ag.n);
    ag.self_weight.assign(ag.n, 0.0);
    ag.strength.assign(ag.n, 0.0);
    ag.m = g.m;

    std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        std::uint32_t cv = out.node_map[v];
        if (!g.self_weight.empty())
            ag.self_weight[cv] += g.self_weight[v];
        for (const auto& [u, w] : g.adj[v]) {
            if (u < v)
                continue; // visit each pair once
            std::uint32_t cu = out.node_map[u];
            if (cu == cv) {
                ag.self_weight[cv] += w;
            } else {
                auto key = cv < cu ? std::make_pair(cv, cu) : std::make_pair(cu, cv);
                edges[key] += w;
            }
        }
    }
    for (const auto& [key, w] : edges) {
        ag.adj[key.first].emplace_back(key.second, w);
        ag.adj[key.second].emplace_back(key.first, w);
        ag.strength[key.first] += w;
        ag.strength[key.second] += w;
    }
    for (std::uint32_t v = 0; v < ag.n; ++v)
        ag.strength[v] += 2 * ag.self_weight[v];
    return out;
}

} // namespace

std::vector<int> renumber_dense(const std::vector<int>& assignment) {
    std::vector<int> out(assignment.size());
    std::map<int, int> remap;
    int next = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        auto [it, inserted] = remap.emplace(assignment[i], next);
        if (inserted)
            ++next;
        out[i] = it->second;
    }
    return out;
}

std::size_t split_disconnected(const LevelGraph& g, std::vector<int>& assignment) {
    int max_id = 0;
    for (int c : assignment)
        max_id = std::max(max_id, c);
    std::vector<std::vector<std::uint32_t>> members(max_id + 1);
    for (std::uint32_t v = 0; v < g.n; ++v)
        members[assignment[v]].push_back(v);

    std::size_t splits = 0;
    int next_id = max_id + 1;
    std::vector<int> component(g.n, -1);
    for (const auto& group : members) {
        if (group.size() < 2)
            continue;
        int comps = 0;
        for (std::uint32_t seed : group) {
            if (component[seed] != -1)
                continue;
            // BFS within the community
            std::vector<std::uint32_t> stack{seed};
            component[seed] = comps;
            while (!stack.empty()) {
                std::uint32_t v = stack.back();
                stack.pop_back();
                for (const auto& [u, w] : g.adj[v]) {
                    if (assignment[u] == assignment[seed] && component[u] == -1) {
                        component[u] = comps;
                        stack.push_back(u);
                    }
                }
            }
            ++comps;
        }
        if (comps > 1) {
            for (std::uint32_t v : group) {
                if (component[v] > 0)
                    assignment[v] = next_id + component[v] - 1;
            }
            next_id += comps - 1;
            splits += static_cast<std::size_t>(comps - 1);
        }
    }
    return splits;
}

std::vector<int> multilevel_search(const LevelGraph& g0, const Objective& obj, Rng& rng, const SearchOptions& opts) {
    std::vector<int> flat(g0.n);
    std::iota(flat.begin(), flat.end(), 0);
    if (g0.n == 0)
        return flat;

    double score_prev = obj.score(g0, CommState::from_assignment(g0, flat));

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        std::size_t moved = 0;

        std::vector<LevelGraph> levels; // owns aggregated graphs
        const LevelGraph* cur = &g0;
        CommState state = CommState::from_assignment(g0, renumber_dense(flat));
        std::vector<std::uint32_t> flat_to_cur(g0.n);
        std::iota(flat_to_cur.begin(), flat_to_cur.end(), 0);

        while (true) {
            moved += local_move(*cur, state, obj, rng, opts.tolerance);
            int live = state.live_count();
            if (static_cast<std::size_t>(live) == cur->n)
                break; // nothing left to merge at this level

            CommState grouping =
                opts.refine ? refine_partition(*cur, state, obj, rng, opts.resolution, opts.theta) : state;
            if (static_cast<std::size_t>(grouping.live_count()) == cur->n)
                break; // refinement kept everything apart; aggregation would be identity

            Aggregated agg = aggregate(*cur, grouping);
            // Induce the coarse starting partition: each aggregate node
            // inherits the community of its members (they share one, since
            // refinement only merges within communities).
            std::vector<int> induced(agg.graph.n, -1);
            for (std::uint32_t v = 0; v < cur->n; ++v) {
                std::uint32_t nv = agg.node_map[v];
                if (induced[nv] == -1)
                    induced[nv] = state.comm[v];
            }
            induced = renumber_dense(induced);

            for (std::uint32_t i = 0; i < g0.n; ++i)
                flat_to_cur[i] = agg.node_map[flat_to_cur[i]];
            levels.push_back(std::move(agg.graph));
            cur = &levels.back();
            state = CommState::from_assignment(*cur, induced);
        }

        for (std::uint32_t i = 0; i < g0.n; ++i)
            flat[i] = state.comm[flat_to_cur[i]];
        flat = renumber_dense(flat);

        double score = obj.score(g0, CommState::from_assignment(g0, flat));
        if (moved == 0)
            break;
        if (score - score_prev <= opts.tolerance)
            break;
        score_prev = score;
    }

    // One more flat round so node-move optimality holds even when the sweep
    // loop exited through the tolerance branch.
    CommState final_state = CommState::from_assignment(g0, renumber_dense(flat));
    local_move(g0, final_state, obj, rng, opts.tolerance);
    return renumber_dense(final_state.comm);
}

} // namespace modsem::cd
