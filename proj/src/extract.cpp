#include "modsem/extract.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "java_lex.hpp"
#include "modsem/errors.hpp"

namespace modsem {

namespace {

namespace jl = javalex;

struct ParsedFile {
    std::string rel_path;
    std::string raw_text;
    std::string stripped;
    std::string package;                       // empty for the default package
    std::map<std::string, std::string> imports; // simple name -> qualified name
    std::vector<std::string> wildcard_packages;
    std::vector<std::string> type_names;       // top-level types, declaration order
    std::string primary;                       // public type if any, else first
};

bool starts_type_name(const std::string& tok) {
    return tok == "class" || tok == "interface" || tok == "enum" || tok == "record";
}

// Parses package, imports and top-level type declarations from stripped text.
// Returns false when no top-level type is found (the file is then skipped).
bool parse_structure(ParsedFile& f) {
    const std::string& text = f.stripped;
    int depth = 0;
    bool public_pending = false;
    std::string pending_keyword; // "package" or "import" awaiting its chain
    bool pending_static = false;
    bool prev_was_dot = false;

    std::size_t i = 0;
    const std::size_t n = text.size();
    std::vector<std::pair<std::string, bool>> types; // name, is_public

    while (i < n) {
        char c = text[i];
        if (c == '{') {
            ++depth;
            public_pending = false;
            ++i;
            prev_was_dot = false;
            continue;
        }
        if (c == '}') {
            depth = std::max(0, depth - 1);
            public_pending = false;
            ++i;
            prev_was_dot = false;
            continue;
        }
        if (c == ';') {
            public_pending = false;
            pending_keyword.clear();
            pending_static = false;
            ++i;
            prev_was_dot = false;
            continue;
        }
        if (!jl::is_ident_start(c)) {
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
                prev_was_dot = (c == '.');
            }
            ++i;
            continue;
        }

        std::size_t start = i;
        while (i < n && jl::is_ident_char(text[i]))
            ++i;
        std::string tok = text.substr(start, i - start);

        if (depth == 0 && !pending_keyword.empty()) {
            if (pending_keyword == "import" && tok == "static" && !pending_static) {
                pending_static = true;
                prev_was_dot = false;
                continue;
            }
            // Collect the dotted chain following `package` / `import`.
            std::string chain = tok;
            while (i < n) {
                std::size_t j = i;
                while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\n' || text[j] == '\r'))
                    ++j;
                if (j >= n || text[j] != '.')
                    break;
                ++j;
                while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\n' || text[j] == '\r'))
                    ++j;
                if (j < n && text[j] == '*') {
                    chain += ".*";
                    i = j + 1;
                    break;
                }
                if (j >= n || !jl::is_ident_start(text[j]))
                    break;
                std::size_t s2 = j;
                while (j < n && jl::is_ident_char(text[j]))
                    ++j;
                chain += "." + text.substr(s2, j - s2);
                i = j;
            }
            if (pending_keyword == "package") {
                if (f.package.empty())
                    f.package = chain;
            } else if (pending_keyword == "import") {
                if (chain.size() > 2 && chain.ends_with(".*")) {
                    f.wildcard_packages.push_back(chain.substr(0, chain.size() - 2));
                } else if (!pending_static) {
                    std::size_t dot = chain.rfind('.');
                    std::string simple = dot == std::string::npos ? chain : chain.substr(dot + 1);
                    f.imports.emplace(simple, chain); // first import of a simple name wins
                }
            }
            pending_keyword.clear();
            pending_static = false;
            prev_was_dot = false;
            continue;
        }

        if (depth == 0) {
            if (tok == "package") {
                pending_keyword = "package";
            } else if (tok == "import") {
                pending_keyword = "import";
                pending_static = false;
            } else if (tok == "public") {
                public_pending = true;
            } else if (starts_type_name(tok) && !prev_was_dot) {
                // `Foo.class` has a dot before `class`; skip those.
                std::size_t j = i;
                while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\n' || text[j] == '\r'))
                    ++j;
                if (j < n && jl::is_ident_start(text[j])) {
                    std::size_t s2 = j;
                    while (j < n && jl::is_ident_char(text[j]))
                        ++j;
                    std::string name = text.substr(s2, j - s2);
                    if (tok != "record" || !jl::is_reserved_word(name))
                        types.emplace_back(name, public_pending);
                    public_pending = false;
                    i = j;
                }
            }
        }
        prev_was_dot = false;
    }

    if (types.empty())
        return false;
    for (const auto& [name, pub] : types)
        f.type_names.push_back(name);
    f.primary = types.front().first;
    for (const auto& [name, pub] : types) {
        if (pub) {
            f.primary = name;
            break;
        }
    }
    return true;
}

std::string qualify(const std::string& package, const std::string& simple) {
    return package.empty() ? simple : package + "." + simple;
}

} // namespace

ExtractionResult extract_dependencies(const std::filesystem::path& project_root,
                                      const LanguageProfile& profile) {
    namespace fs = std::filesystem;

    std::error_code ec;
    if (!fs::exists(project_root, ec) || !fs::is_directory(project_root, ec))
        throw IoError("project root not readable: " + project_root.string());

    std::vector<fs::path> files;
    for (auto it = fs::recursive_directory_iterator(project_root, fs::directory_options::skip_permission_denied, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec)
            throw IoError("cannot walk " + project_root.string() + ": " + ec.message());
        if (!it->is_regular_file())
            continue;
        std::string ext = it->path().extension().string();
        if (std::find(profile.extensions.begin(), profile.extensions.end(), ext) != profile.extensions.end())
            files.push_back(it->path());
    }
    std::sort(files.begin(), files.end()); // deterministic walk order

    ExtractionResult result;
    std::vector<ParsedFile> parsed;

    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            result.diagnostics.push_back({path.string(), "unreadable file, skipped"});
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();

        ParsedFile f;
        f.rel_path = fs::relative(path, project_root, ec).generic_string();
        if (ec)
            f.rel_path = path.generic_string();
        f.raw_text = buf.str();
        f.stripped = jl::strip_comments_and_literals(f.raw_text);
        if (!parse_structure(f)) {
            result.diagnostics.push_back({f.rel_path, "no top-level type declaration, skipped"});
            continue;
        }
        parsed.push_back(std::move(f));
    }

    if (parsed.empty())
        throw EmptyProjectError("no parsable source files under " + project_root.string());

    // Project-wide registry of qualified type names.
    std::set<std::string> registry;
    std::unordered_map<std::string, std::set<std::string>> package_types; // package -> simple names
    for (const auto& f : parsed) {
        for (const auto& t : f.type_names) {
            registry.insert(qualify(f.package, t));
            package_types[f.package].insert(t);
        }
    }

    for (const auto& f : parsed) {
        for (const auto& t : f.type_names) {
            std::string qn = qualify(f.package, t);
            result.graph.add_node(qn);
            result.units.push_back({qn, f.rel_path, f.raw_text});
        }
    }

    // Count resolved references per file, attributed to its primary class.
    for (const auto& f : parsed) {
        const std::string source_node = qualify(f.package, f.primary);
        std::map<std::string, std::int64_t> uses;

        for (const auto& chain : jl::scan_ident_chains(f.stripped)) {
            const auto& segs = chain.segments;
            if (segs.empty() || jl::is_reserved_word(segs[0]))
                continue;

            std::string target;
            // Longest fully qualified prefix match (needs >= 2 segments).
            if (segs.size() >= 2) {
                std::string prefix;
                for (std::size_t k = 0; k < segs.size(); ++k)
                    prefix += (k ? "." : "") + segs[k];
                std::size_t len = segs.size();
                while (len >= 2) {
                    if (registry.count(prefix)) {
                        target = prefix;
                        break;
                    }
                    std::size_t dot = prefix.rfind('.');
                    prefix.resize(dot);
                    --len;
                }
            }
            if (target.empty()) {
                const std::string& simple = segs[0];
                auto imp = f.imports.find(simple);
                if (imp != f.imports.end()) {
                    // Explicit import shadows everything; external imports
                    // resolve outside the project and count nothing.
                    if (registry.count(imp->second))
                        target = imp->second;
                } else {
                    auto pkg = package_types.find(f.package);
                    if (pkg != package_types.end() && pkg->second.count(simple)) {
                        target = qualify(f.package, simple);
                    } else {
                        for (const auto& wp : f.wildcard_packages) {
                            auto wt = package_types.find(wp);
                            if (wt != package_types.end() && wt->second.count(simple)) {
                                target = qualify(wp, simple);
                                break;
                            }
                        }
                    }
                }
            }
            if (!target.empty() && target != source_node)
                ++uses[target];
        }

        for (const auto& [target, count] : uses)
            result.graph.add_use(source_node, target, count);
    }

    std::sort(result.units.begin(), result.units.end(),
              [](const SourceUnit& a, const SourceUnit& b) { return a.qualified_name < b.qualified_name; });
    result.graph.validate();
    return result;
}

} // namespace modsem
