#include "modsem/tokens.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "java_lex.hpp"
#include "modsem/errors.hpp"

namespace modsem {

namespace {

// Boilerplate identifiers that carry no component semantics. Mirrors
// data/stoplist.txt; override with --stoplist.
const char* const kDefaultStopwords[] = {
    "main", "println", "print", "printf", "system", "out", "err",
    "args", "string", "object", "java", "javax", "lang", "override",
    "tostring", "equals", "hashcode",
};

const char* const kDefaultKeywords[] = {
    "abstract", "assert",     "boolean",  "break",      "byte",     "case",
    "catch",    "char",       "class",    "const",      "continue", "default",
    "do",       "double",     "else",     "enum",       "extends",  "final",
    "finally",  "float",      "for",      "goto",       "if",       "implements",
    "import",   "instanceof", "int",      "interface",  "long",     "native",
    "new",      "package",    "private",  "protected",  "public",   "return",
    "short",    "static",     "strictfp", "super",      "switch",   "synchronized",
    "this",     "throw",      "throws",   "transient",  "try",      "void",
    "volatile", "while",      "true",     "false",      "null",
};

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

bool has_vowel(const std::string& s) {
    return s.find_first_of("aeiouy") != std::string::npos;
}

} // namespace

TermFilter TermFilter::defaults() {
    TermFilter f;
    for (const char* w : kDefaultKeywords)
        f.keywords_.insert(w);
    for (const char* w : kDefaultStopwords)
        f.stopwords_.insert(w);
    return f;
}

TermFilter TermFilter::with_files(const std::filesystem::path* keywords, const std::filesystem::path* stoplist) {
    TermFilter f = defaults();
    if (keywords) {
        f.keywords_.clear();
        for (auto& term : load_term_list(*keywords))
            f.keywords_.insert(std::move(term));
    }
    if (stoplist) {
        f.stopwords_.clear();
        for (auto& term : load_term_list(*stoplist))
            f.stopwords_.insert(std::move(term));
    }
    return f;
}

std::vector<std::string> load_term_list(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open term list " + file.string());
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto end = line.find('#');
        if (end != std::string::npos)
            line.resize(end);
        // trim
        auto a = line.find_first_not_of(" \t");
        if (a == std::string::npos)
            continue;
        auto b = line.find_last_not_of(" \t");
        std::string term = line.substr(a, b - a + 1);
        std::transform(term.begin(), term.end(), term.begin(), to_lower);
        terms.push_back(std::move(term));
    }
    return terms;
}

std::vector<std::string> split_identifier(std::string_view identifier) {
    std::vector<std::string> words;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    };

    const std::size_t n = identifier.size();
    for (std::size_t i = 0; i < n; ++i) {
        char c = identifier[i];
        if (c == '_' || c == '$') {
            flush();
            continue;
        }
        if (i > 0 && is_upper(c) && !cur.empty()) {
            char prev = identifier[i - 1];
            bool camel = is_lower(prev) || is_digit(prev);
            // end of an acronym run: "ATNFactory" splits before the 'F'
            bool acronym_end = is_upper(prev) && i + 1 < n && is_lower(identifier[i + 1]);
            if (camel || acronym_end)
                flush();
        }
        cur += to_lower(c);
    }
    flush();
    return words;
}

std::string lemmatize(const std::string& token) {
    static const std::map<std::string, std::string> kIrregular = {
        {"indices", "index"},   {"matrices", "matrix"}, {"vertices", "vertex"},
        {"children", "child"},  {"indexes", "index"},   {"caches", "cache"},
        {"queries", "query"},   {"entries", "entry"},
    };
    auto irr = kIrregular.find(token);
    if (irr != kIrregular.end())
        return irr->second;

    auto ends_with = [&](const char* suffix) { return token.ends_with(suffix); };
    std::size_t n = token.size();

    if (n > 4 && ends_with("ies"))
        return token.substr(0, n - 3) + "y";
    if (n > 4 && ends_with("sses"))
        return token.substr(0, n - 2);
    if (n > 3 && (ends_with("xes") || ends_with("ches") || ends_with("shes")))
        return token.substr(0, n - 2);
    if (n >= 4 && token.back() == 's' && !ends_with("ss") && !ends_with("us") && !ends_with("is"))
        return token.substr(0, n - 1);
    if (n >= 7 && ends_with("ing") && has_vowel(token.substr(0, n - 3)))
        return token.substr(0, n - 3);
    if (n >= 6 && ends_with("ed") && has_vowel(token.substr(0, n - 2)))
        return token.substr(0, n - 2);
    return token;
}

TokenDocument name_tokens(const std::string& qualified_name, const TermFilter& filter) {
    if (qualified_name.empty())
        throw DomainError("qualified name must be non-empty");

    std::vector<std::string> segments;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = qualified_name.find('.', start);
        if (dot == std::string::npos) {
            segments.push_back(qualified_name.substr(start));
            break;
        }
        segments.push_back(qualified_name.substr(start, dot - start));
        start = dot + 1;
    }

    // Drop the two leading organization segments, but always keep the class
    // name itself for short names.
    std::size_t drop = std::min<std::size_t>(2, segments.size() - 1);

    TokenDocument doc;
    doc.node = qualified_name;
    for (std::size_t i = drop; i < segments.size(); ++i) {
        for (auto& word : split_identifier(segments[i])) {
            if (!word.empty() && !filter.drop(word))
                doc.tokens.push_back(std::move(word));
        }
    }
    return doc;
}

TokenDocument identifier_tokens(const std::string& node, std::string_view source, const TermFilter& filter,
                                bool lemma) {
    TokenDocument doc;
    doc.node = node;
    std::string stripped = javalex::strip_comments_and_literals(source);
    for (const auto& ident : javalex::scan_identifiers(stripped)) {
        for (auto& word : split_identifier(ident)) {
            if (word.empty() || filter.drop(word))
                continue;
            if (lemma) {
                std::string stem = lemmatize(word);
                if (!filter.drop(stem))
                    doc.tokens.push_back(std::move(stem));
            } else {
                doc.tokens.push_back(std::move(word));
            }
        }
    }
    return doc;
}

} // namespace modsem
