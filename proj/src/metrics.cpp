#include "modsem/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modsem/errors.hpp"

namespace modsem {

std::size_t CommunitySet::total_nodes() const {
    std::size_t n = 0;
    for (const auto& c : communities)
        n += c.nodes.size();
    return n;
}

CommunitySet filter_small(const Partition& p, int min_size) {
    if (min_size < 1)
        throw DomainError("min community size must be >= 1");
    CommunitySet cs;
    cs.min_size = min_size;
    auto groups = p.groups();
    for (std::size_t id = 0; id < groups.size(); ++id) {
        if (groups[id].size() >= static_cast<std::size_t>(min_size))
            cs.communities.push_back({static_cast<int>(id), std::move(groups[id])});
    }
    cs.retained_node_fraction =
        p.node_count() == 0 ? 0.0 : static_cast<double>(cs.total_nodes()) / static_cast<double>(p.node_count());
    return cs;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw DomainError("cosine of vectors with different dimensions");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0 || nb <= 0)
        return 0.0; // zero-vector convention
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

bool is_zero(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

double cosine_counted(const std::vector<double>& a, const std::vector<double>& b, MetricDiagnostics* diag) {
    if (diag && (is_zero(a) || is_zero(b)))
        ++diag->zero_vector_pairs;
    return cosine_similarity(a, b);
}

std::vector<double> centroid(const CommunityGroup& c, const EmbeddingMatrix& emb) {
    std::vector<double> sum(emb.dimension, 0.0);
    for (const auto& node : c.nodes) {
        const auto& v = emb.vector_of(node);
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += v[i];
    }
    for (double& x : sum)
        x /= static_cast<double>(c.nodes.size());
    return sum;
}

} // namespace

CohesionResult cohesion(const CommunitySet& cs, const EmbeddingMatrix& emb, MetricDiagnostics* diag) {
    if (cs.empty())
        throw DomainError("cohesion undefined: no communities survived the size filter");

    CohesionResult result;
    double total = 0;
    for (const auto& c : cs.communities) {
        double value;
        if (c.nodes.size() < 2) {
            value = 1.0; // a lone node is trivially cohesive
        } else {
            double sum = 0;
            std::size_t pairs = 0;
            for (std::size_t i = 0; i < c.nodes.size(); ++i) {
                for (std::size_t j = i + 1; j < c.nodes.size(); ++j) {
                    sum += cosine_counted(emb.vector_of(c.nodes[i]), emb.vector_of(c.nodes[j]), diag);
                    ++pairs;
                }
            }
            value = sum / static_cast<double>(pairs);
        }
        result.per_community.emplace_back(c.id, value);
        total += value;
    }
    result.mean = total / static_cast<double>(cs.communities.size());
    return result;
}

double separation(const CommunitySet& cs, const EmbeddingMatrix& emb, MetricDiagnostics* diag) {
    const std::size_t n = cs.communities.size();
    if (n < 2)
        throw DomainError("separation undefined with fewer than 2 communities");

    std::vector<std::vector<double>> centroids;
    centroids.reserve(n);
    for (const auto& c : cs.communities)
        centroids.push_back(centroid(c, emb));

    double sum = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += cosine_counted(centroids[i], centroids[j], diag);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

SilhouetteResult silhouette(const CommunitySet& cs, const EmbeddingMatrix& emb, MetricDiagnostics* diag) {
    const std::size_t n = cs.communities.size();
    if (n < 2)
        throw DomainError("silhouette undefined with fewer than 2 communities");

    SilhouetteResult result;
    double total = 0;
    std::size_t count = 0;
    for (std::size_t ci = 0; ci < n; ++ci) {
        const auto& own = cs.communities[ci];
        for (const auto& node : own.nodes) {
            const auto& x = emb.vector_of(node);

            double a = 0.0;
            if (own.nodes.size() > 1) {
                for (const auto& other : own.nodes) {
                    if (other != node)
                        a += 1.0 - cosine_counted(x, emb.vector_of(other), diag);
                }
                a /= static_cast<double>(own.nodes.size() - 1);
            }

            double b = std::numeric_limits<double>::infinity();
            for (std::size_t cj = 0; cj < n; ++cj) {
                if (cj == ci)
                    continue;
                const auto& foreign = cs.communities[cj];
                double d = 0;
                for (const auto& other : foreign.nodes)
                    d += 1.0 - cosine_counted(x, emb.vector_of(other), diag);
                d /= static_cast<double>(foreign.nodes.size());
                b = std::min(b, d);
            }

            double denom = std::max(a, b);
            double s = 0.0;
            if (own.nodes.size() > 1 && denom > 0)
                s = (b - a) / denom;
            result.per_node[node] = s;
            total += s;
            ++count;
        }
    }
    result.mean = total / static_cast<double>(count);
    return result;
}

std::optional<double> dep_sim_correlation(const UndirectedGraph& g, const CommunitySet& cs,
                                          const EmbeddingMatrix& emb, MetricDiagnostics* diag) {
    const std::size_t n = cs.communities.size();
    if (n < 2)
        throw DomainError("dependency-similarity correlation undefined with fewer than 2 communities");

    std::map<std::string, std::size_t> comm_index;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& node : cs.communities[i].nodes)
            comm_index[node] = i;
    }

    // Inter-community weight per unordered community pair, zeros included.
    std::map<std::pair<std::size_t, std::size_t>, double> weight;
    for (const auto& [edge, w] : g.edges()) {
        auto a = comm_index.find(edge.first);
        auto b = comm_index.find(edge.second);
        if (a == comm_index.end() || b == comm_index.end() || a->second == b->second)
            continue;
        auto key = a->second < b->second ? std::make_pair(a->second, b->second)
                                         : std::make_pair(b->second, a->second);
        weight[key] += w;
    }

    std::vector<std::vector<double>> centroids;
    centroids.reserve(n);
    for (const auto& c : cs.communities)
        centroids.push_back(centroid(c, emb));

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto it = weight.find({i, j});
            xs.push_back(it == weight.end() ? 0.0 : it->second);
            ys.push_back(cosine_counted(centroids[i], centroids[j], diag));
        }
    }

    const double count = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0 || syy <= 0)
        return std::nullopt; // zero variance: explicitly undefined
    return sxy / std::sqrt(sxx * syy);
}

} // namespace modsem
