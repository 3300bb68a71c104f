#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace modsem {

// One parsed top-level class and the file it came from.
struct SourceUnit {
    std::string qualified_name; // dot-separated, unique within a project
    std::string file_path;      // relative to the project root
    std::string raw_text;       // file contents, shared by classes of one file
};

// Directed, weighted class-level use graph of one project.
// Invariants: no self-loops, endpoints are nodes, weights >= 1, at most one
// edge per ordered pair. add_use() accumulates, so duplicates merge instead
// of violating the single-edge rule.
class DependencyGraph {
public:
    using Edge = std::pair<std::string, std::string>;

    void add_node(const std::string& name);
    void add_use(const std::string& src, const std::string& dst, std::int64_t count = 1);

    bool has_node(const std::string& name) const { return nodes_.count(name) > 0; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::int64_t weight(const std::string& src, const std::string& dst) const;
    std::int64_t total_weight() const;

    const std::set<std::string>& nodes() const { return nodes_; }
    const std::map<Edge, std::int64_t>& edges() const { return edges_; }

    bool operator==(const DependencyGraph&) const = default;

    // Re-checks every invariant; throws DomainError on the first violation.
    void validate() const;

private:
    std::set<std::string> nodes_;
    std::map<Edge, std::int64_t> edges_;
};

// Undirected view: weight of {a,b} is the sum of both directed weights.
class UndirectedGraph {
public:
    using Edge = std::pair<std::string, std::string>; // stored with first < second

    void add_node(const std::string& name);
    void add_edge(const std::string& a, const std::string& b, double weight);

    bool has_node(const std::string& name) const { return nodes_.count(name) > 0; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    double weight(const std::string& a, const std::string& b) const;
    double total_weight() const;
    double strength(const std::string& node) const;

    const std::set<std::string>& nodes() const { return nodes_; }
    const std::map<Edge, double>& edges() const { return edges_; }

    // Copy with every edge weight forced to 1 (the --unweighted reading).
    UndirectedGraph unit_weights() const;

    bool operator==(const UndirectedGraph&) const = default;

private:
    std::set<std::string> nodes_;
    std::map<Edge, double> edges_;
};

UndirectedGraph symmetrize(const DependencyGraph& g);

} // namespace modsem
