#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace modsem {

// Ordered lowercase word tokens for one node. Java keywords and stoplist
// terms never appear here.
struct TokenDocument {
    std::string node;
    std::vector<std::string> tokens;
};

// Keyword list + stoplist applied after camel-case splitting. The shipped
// defaults cover the Java reserved words and common boilerplate identifiers
// (main, println, ...); both lists can be replaced from files.
class TermFilter {
public:
    static TermFilter defaults();
    static TermFilter with_files(const std::filesystem::path* keywords, const std::filesystem::path* stoplist);

    bool drop(const std::string& lowercase_token) const {
        return keywords_.count(lowercase_token) > 0 || stopwords_.count(lowercase_token) > 0;
    }

private:
    std::unordered_set<std::string> keywords_;
    std::unordered_set<std::string> stopwords_;
};

// Splits camelCase / underscore identifiers into lowercase words. Digits
// stick to the preceding word: "v4" stays one token, "Base64Util" gives
// {"base64", "util"}.
std::vector<std::string> split_identifier(std::string_view identifier);

// Deterministic suffix-rule lemmatizer (plus a small irregular table):
// classes -> class, indices -> index, tokens -> token.
std::string lemmatize(const std::string& token);

// Package/class-name document: split on dots, drop the two leading
// organization segments (keeping at least the class name), camel-split,
// lowercase, filter. "org.antlr.v4.tool.LexerGrammar" gives
// {"v4","tool","lexer","grammar"}.
TokenDocument name_tokens(const std::string& qualified_name, const TermFilter& filter);

// All identifier occurrences of a source file, in order, camel-split,
// lowercased and filtered; `lemma` passes each token through lemmatize().
TokenDocument identifier_tokens(const std::string& node, std::string_view source, const TermFilter& filter,
                                bool lemma);

// One term per line, '#' comments; used for stoplist/keyword overrides.
std::vector<std::string> load_term_list(const std::filesystem::path& file);

} // namespace modsem
