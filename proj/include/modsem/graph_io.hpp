#pragma once

#include <filesystem>

#include "modsem/graph.hpp"

namespace modsem {

// Tab-separated edge list: one `source<TAB>target<TAB>weight` record per
// line, isolated nodes as `node<TAB>-<TAB>0` sentinel lines, `#` comments
// ignored. write_graph followed by read_graph reproduces the graph exactly.
void write_graph(const DependencyGraph& g, const std::filesystem::path& file);
DependencyGraph read_graph(const std::filesystem::path& file);

} // namespace modsem
