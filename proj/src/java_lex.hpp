#pragma once

// Internal lexical helpers for .java sources, shared by the dependency
// extractor and the identifier tokenizer. Not installed.

#include <string>
#include <string_view>
#include <vector>

namespace modsem::javalex {

// Replaces comments, string/char literals and text blocks with spaces.
// Newlines survive so later stages could still report line numbers.
std::string strip_comments_and_literals(std::string_view source);

bool is_ident_start(char c);
bool is_ident_char(char c);
bool is_reserved_word(const std::string& token);

// All identifier-like tokens in order of occurrence, reserved words excluded.
std::vector<std::string> scan_identifiers(std::string_view stripped);

// A dotted identifier chain such as `org.antlr.v4.tool.LexerGrammar` or the
// single segment `LexerGrammar`. Chains never start mid-chain: `b.c` inside
// `a.b.c` is not reported separately.
struct IdentChain {
    std::vector<std::string> segments;
};

std::vector<IdentChain> scan_ident_chains(std::string_view stripped);

} // namespace modsem::javalex
