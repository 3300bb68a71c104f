#pragma once

// Shared helpers for the test suites: small graph builders, exhaustive
// partition enumeration, and independent oracle implementations of the
// quality functions and metrics (kept deliberately separate from the
// library's computation paths).

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "modsem/community.hpp"
#include "modsem/graph.hpp"

namespace testutil {

inline std::string node_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%02d", i);
    return buf;
}

inline modsem::UndirectedGraph make_graph(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    modsem::UndirectedGraph g;
    for (int i = 0; i < n; ++i)
        g.add_node(node_name(i));
    for (const auto& [a, b, w] : edges)
        g.add_edge(node_name(a), node_name(b), w);
    return g;
}

inline modsem::UndirectedGraph clique(int n, int offset = 0) {
    modsem::UndirectedGraph g;
    for (int i = 0; i < n; ++i)
        g.add_node(node_name(offset + i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge(node_name(offset + i), node_name(offset + j), 1.0);
    return g;
}

inline modsem::UndirectedGraph merge(const modsem::UndirectedGraph& a, const modsem::UndirectedGraph& b) {
    modsem::UndirectedGraph g = a;
    for (const auto& n : b.nodes())
        g.add_node(n);
    for (const auto& [e, w] : b.edges())
        g.add_edge(e.first, e.second, w);
    return g;
}

inline modsem::Partition partition_of(const modsem::UndirectedGraph& g, const std::vector<int>& assignment) {
    std::map<std::string, int> m;
    int i = 0;
    for (const auto& n : g.nodes())
        m[n] = assignment[i++];
    return modsem::Partition(m);
}

// Visits every partition of {0..n-1} as a restricted growth string.
template <typename Fn>
void for_each_partition(int n, Fn&& fn) {
    std::vector<int> a(n, 0);
    std::vector<int> max_prefix(n, 0); // max of a[0..i-1]
    while (true) {
        fn(a);
        int i = n - 1;
        while (i > 0 && a[i] == max_prefix[i] + 1)
            --i;
        if (i == 0)
            return;
        ++a[i];
        for (int j = i + 1; j < n; ++j) {
            max_prefix[j] = std::max(max_prefix[j - 1], a[j - 1]);
            a[j] = 0;
        }
    }
}

// Independent modularity oracle straight from the adjacency-matrix form:
// Q = (1/2m) sum_ij [A_ij - d_i d_j / 2m] delta(c_i, c_j).
inline double modularity_matrix_oracle(const modsem::UndirectedGraph& g, const std::vector<int>& assignment) {
    std::vector<std::string> names(g.nodes().begin(), g.nodes().end());
    int n = static_cast<int>(names.size());
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i)
        index[names[i]] = i;
    double two_m = 0;
    for (const auto& [e, w] : g.edges()) {
        int i = index[e.first], j = index[e.second];
        a[i][j] += w;
        a[j][i] += w;
        two_m += 2 * w;
    }
    std::vector<double> deg(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            deg[i] += a[i][j];
    double q = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (assignment[i] != assignment[j])
                continue;
            q += a[i][j] - deg[i] * deg[j] / two_m;
        }
    }
    return q / two_m;
}

// Independent map equation oracle in the module-entropy form:
// L = q H(Q) + sum_i p_i H(P^i).
inline double map_equation_entropy_oracle(const modsem::UndirectedGraph& g, const std::vector<int>& assignment) {
    std::vector<std::string> names(g.nodes().begin(), g.nodes().end());
    int n = static_cast<int>(names.size());
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i)
        index[names[i]] = i;

    int modules = 0;
    for (int c : assignment)
        modules = std::max(modules, c + 1);

    double two_m = 2 * g.total_weight();
    std::vector<double> strength(n, 0.0);
    std::vector<double> cut(modules, 0.0);
    for (const auto& [e, w] : g.edges()) {
        int i = index[e.first], j = index[e.second];
        strength[i] += w;
        strength[j] += w;
        if (assignment[i] != assignment[j]) {
            cut[assignment[i]] += w;
            cut[assignment[j]] += w;
        }
    }

    std::vector<double> p_module(modules, 0.0);
    for (int i = 0; i < n; ++i)
        p_module[assignment[i]] += strength[i] / two_m;

    auto log2_safe = [](double x) { return std::log2(x); };

    double q_total = 0;
    for (int c = 0; c < modules; ++c)
        q_total += cut[c] / two_m;

    double l = 0;
    if (q_total > 0) {
        double h = 0;
        for (int c = 0; c < modules; ++c) {
            double qc = cut[c] / two_m;
            if (qc > 0)
                h -= (qc / q_total) * log2_safe(qc / q_total);
        }
        l += q_total * h;
    }
    for (int c = 0; c < modules; ++c) {
        double qc = cut[c] / two_m;
        double p_circ = qc + p_module[c];
        if (p_circ <= 0)
            continue;
        double h = 0;
        if (qc > 0)
            h -= (qc / p_circ) * log2_safe(qc / p_circ);
        for (int i = 0; i < n; ++i) {
            if (assignment[i] != c)
                continue;
            double pa = strength[i] / two_m;
            if (pa > 0)
                h -= (pa / p_circ) * log2_safe(pa / p_circ);
        }
        l += p_circ * h;
    }
    return l;
}

// Random connected-ish weighted graph: spanning tree plus extra edges, all
// nodes with degree >= 1.
inline modsem::UndirectedGraph random_graph(std::mt19937& rng, int n, double extra_edge_prob = 0.3,
                                            int max_weight = 3) {
    modsem::UndirectedGraph g;
    for (int i = 0; i < n; ++i)
        g.add_node(node_name(i));
    std::uniform_int_distribution<int> weight(1, max_weight);
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> parent(0, i - 1);
        g.add_edge(node_name(i), node_name(parent(rng)), weight(rng));
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (g.weight(node_name(i), node_name(j)) == 0 && coin(rng) < extra_edge_prob)
                g.add_edge(node_name(i), node_name(j), weight(rng));
        }
    }
    return g;
}

// True when no single-node relocation (including to a fresh community)
// improves the objective by more than tol; `value` maps an assignment to
// the objective being maximized.
template <typename Value>
bool node_move_optimal(const std::vector<int>& assignment, Value&& value, double tol) {
    double current = value(assignment);
    int n = static_cast<int>(assignment.size());
    int max_c = 0;
    for (int c : assignment)
        max_c = std::max(max_c, c + 1);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c <= max_c; ++c) { // max_c acts as the fresh community
            if (c == assignment[i])
                continue;
            std::vector<int> moved = assignment;
            moved[i] = c;
            if (value(moved) > current + tol)
                return false;
        }
    }
    return true;
}

} // namespace testutil
