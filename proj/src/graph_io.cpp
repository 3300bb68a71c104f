#include "modsem/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <vector>

#include "modsem/errors.hpp"

namespace modsem {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

} // namespace

void write_graph(const DependencyGraph& g, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out)
        throw IoError("cannot open " + file.string() + " for writing");

    std::set<std::string> connected;
    for (const auto& [edge, w] : g.edges()) {
        connected.insert(edge.first);
        connected.insert(edge.second);
    }
    for (const auto& [edge, w] : g.edges())
        out << edge.first << '\t' << edge.second << '\t' << w << '\n';
    for (const auto& node : g.nodes()) {
        if (!connected.count(node))
            out << node << "\t-\t0\n";
    }
    if (!out)
        throw IoError("write failed for " + file.string());
}

DependencyGraph read_graph(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open " + file.string() + " for reading");

    DependencyGraph g;
    std::set<DependencyGraph::Edge> seen;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3)
            throw ParseError("expected 3 tab-separated fields, got " + std::to_string(fields.size()), lineno);
        const std::string& src = fields[0];
        const std::string& dst = fields[1];
        if (src.empty())
            throw ParseError("empty source node", lineno);

        std::int64_t weight = 0;
        auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), weight);
        if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size())
            throw ParseError("malformed weight '" + fields[2] + "'", lineno);

        if (dst == "-") {
            if (weight != 0)
                throw ParseError("isolated-node sentinel must have weight 0", lineno);
            g.add_node(src);
            continue;
        }
        if (weight < 1)
            throw ParseError("edge weight must be >= 1", lineno);
        if (!seen.insert({src, dst}).second)
            throw ParseError("duplicate directed edge " + src + " -> " + dst, lineno);
        if (src == dst)
            throw ParseError("self-loop on " + src, lineno);
        g.add_use(src, dst, weight);
    }
    return g;
}

} // namespace modsem
