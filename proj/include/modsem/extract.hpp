#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "modsem/graph.hpp"

namespace modsem {

// Which sources to parse. Java is the only shipped profile; the struct keeps
// the extractor signature honest about that being a choice.
struct LanguageProfile {
    std::string name;
    std::vector<std::string> extensions;

    static LanguageProfile java() { return {"java", {".java"}}; }
};

struct ExtractionDiagnostic {
    std::string file;
    std::string message;
};

struct ExtractionResult {
    DependencyGraph graph;
    std::vector<SourceUnit> units; // one per node, sorted by qualified name
    std::vector<ExtractionDiagnostic> diagnostics;
};

// Builds the class dependency graph of one project tree. Reference
// resolution is lexical: explicit imports, same-package siblings, project
// wildcard imports, and fully qualified occurrences. The edge weight is the
// number of resolved references from the source file, imports included.
// Nested classes fold into their top-level class; self-references are
// dropped. Unparsable files are skipped with a diagnostic.
ExtractionResult extract_dependencies(const std::filesystem::path& project_root,
                                      const LanguageProfile& profile = LanguageProfile::java());

} // namespace modsem
