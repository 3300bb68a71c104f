#include "modsem/graph.hpp"

#include "modsem/errors.hpp"

namespace modsem {

void DependencyGraph::add_node(const std::string& name) {
    if (name.empty())
        throw DomainError("node name must be non-empty");
    nodes_.insert(name);
}

void DependencyGraph::add_use(const std::string& src, const std::string& dst, std::int64_t count) {
    if (count < 1)
        throw DomainError("use count must be >= 1 for edge " + src + " -> " + dst);
    if (src == dst)
        throw DomainError("self-loop rejected for node " + src);
    add_node(src);
    add_node(dst);
    edges_[{src, dst}] += count;
}

std::int64_t DependencyGraph::weight(const std::string& src, const std::string& dst) const {
    auto it = edges_.find({src, dst});
    return it == edges_.end() ? 0 : it->second;
}

std::int64_t DependencyGraph::total_weight() const {
    std::int64_t total = 0;
    for (const auto& [edge, w] : edges_)
        total += w;
    return total;
}

void DependencyGraph::validate() const {
    for (const auto& [edge, w] : edges_) {
        if (edge.first == edge.second)
            throw DomainError("self-loop on " + edge.first);
        if (!has_node(edge.first) || !has_node(edge.second))
            throw DomainError("edge endpoint not in node set: " + edge.first + " -> " + edge.second);
        if (w < 1)
            throw DomainError("non-positive weight on " + edge.first + " -> " + edge.second);
    }
    for (const auto& n : nodes_) {
        if (n.empty())
            throw DomainError("empty node name");
    }
}

void UndirectedGraph::add_node(const std::string& name) {
    if (name.empty())
        throw DomainError("node name must be non-empty");
    nodes_.insert(name);
}

void UndirectedGraph::add_edge(const std::string& a, const std::string& b, double weight) {
    if (a == b)
        throw DomainError("self-loop rejected for node " + a);
    if (weight <= 0)
        throw DomainError("non-positive weight on {" + a + ", " + b + "}");
    add_node(a);
    add_node(b);
    Edge e = a < b ? Edge{a, b} : Edge{b, a};
    edges_[e] += weight;
}

double UndirectedGraph::weight(const std::string& a, const std::string& b) const {
    Edge e = a < b ? Edge{a, b} : Edge{b, a};
    auto it = edges_.find(e);
    return it == edges_.end() ? 0.0 : it->second;
}

double UndirectedGraph::total_weight() const {
    double total = 0;
    for (const auto& [edge, w] : edges_)
        total += w;
    return total;
}

double UndirectedGraph::strength(const std::string& node) const {
    double s = 0;
    for (const auto& [edge, w] : edges_) {
        if (edge.first == node || edge.second == node)
            s += w;
    }
    return s;
}

UndirectedGraph UndirectedGraph::unit_weights() const {
    UndirectedGraph g;
    for (const auto& n : nodes_)
        g.add_node(n);
    for (const auto& [edge, w] : edges_)
        g.add_edge(edge.first, edge.second, 1.0);
    return g;
}

UndirectedGraph symmetrize(const DependencyGraph& g) {
    UndirectedGraph u;
    for (const auto& n : g.nodes())
        u.add_node(n);
    for (const auto& [edge, w] : g.edges())
        u.add_edge(edge.first, edge.second, static_cast<double>(w));
    return u;
}

} // namespace modsem
