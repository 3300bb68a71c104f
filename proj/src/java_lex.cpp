#include "java_lex.hpp"

#include <unordered_set>

namespace modsem::javalex {

std::string strip_comments_and_literals(std::string_view source) {
    std::string out;
    out.reserve(source.size());

    enum class State { Code, LineComment, BlockComment, String, Char, TextBlock };
    State state = State::Code;

    std::size_t i = 0;
    const std::size_t n = source.size();
    auto peek = [&](std::size_t k) { return i + k < n ? source[i + k] : '\0'; };

    while (i < n) {
        char c = source[i];
        switch (state) {
        case State::Code:
            if (c == '/' && peek(1) == '/') {
                state = State::LineComment;
                out += "  ";
                i += 2;
            } else if (c == '/' && peek(1) == '*') {
                state = State::BlockComment;
                out += "  ";
                i += 2;
            } else if (c == '"' && peek(1) == '"' && peek(2) == '"') {
                state = State::TextBlock;
                out += "   ";
                i += 3;
            } else if (c == '"') {
                state = State::String;
                out += ' ';
                ++i;
            } else if (c == '\'') {
                state = State::Char;
                out += ' ';
                ++i;
            } else {
                out += c;
                ++i;
            }
            break;
        case State::LineComment:
            if (c == '\n') {
                state = State::Code;
                out += '\n';
            } else {
                out += ' ';
            }
            ++i;
            break;
        case State::BlockComment:
            if (c == '*' && peek(1) == '/') {
                state = State::Code;
                out += "  ";
                i += 2;
            } else {
                out += (c == '\n') ? '\n' : ' ';
                ++i;
            }
            break;
        case State::String:
            if (c == '\\' && i + 1 < n) {
                out += "  ";
                i += 2;
            } else if (c == '"') {
                state = State::Code;
                out += ' ';
                ++i;
            } else {
                out += (c == '\n') ? '\n' : ' ';
                ++i;
            }
            break;
        case State::Char:
            if (c == '\\' && i + 1 < n) {
                out += "  ";
                i += 2;
            } else if (c == '\'') {
                state = State::Code;
                out += ' ';
                ++i;
            } else {
                out += (c == '\n') ? '\n' : ' ';
                ++i;
            }
            break;
        case State::TextBlock:
            if (c == '\\' && i + 1 < n) {
                out += "  ";
                i += 2;
            } else if (c == '"' && peek(1) == '"' && peek(2) == '"') {
                state = State::Code;
                out += "   ";
                i += 3;
            } else {
                out += (c == '\n') ? '\n' : ' ';
                ++i;
            }
            break;
        }
    }
    return out;
}

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_reserved_word(const std::string& token) {
    static const std::unordered_set<std::string> kReserved = {
        "abstract", "assert",     "boolean",  "break",      "byte",    "case",
        "catch",    "char",       "class",    "const",      "continue", "default",
        "do",       "double",     "else",     "enum",       "extends", "final",
        "finally",  "float",      "for",      "goto",       "if",      "implements",
        "import",   "instanceof", "int",      "interface",  "long",    "native",
        "new",      "package",    "private",  "protected",  "public",  "return",
        "short",    "static",     "strictfp", "super",      "switch",  "synchronized",
        "this",     "throw",      "throws",   "transient",  "try",     "void",
        "volatile", "while",      "true",     "false",      "null",
    };
    return kReserved.count(token) > 0;
}

std::vector<std::string> scan_identifiers(std::string_view stripped) {
    std::vector<std::string> out;
    std::size_t i = 0;
    const std::size_t n = stripped.size();
    while (i < n) {
        if (is_ident_start(stripped[i])) {
            std::size_t start = i;
            while (i < n && is_ident_char(stripped[i]))
                ++i;
            std::string tok(stripped.substr(start, i - start));
            if (!is_reserved_word(tok))
                out.push_back(std::move(tok));
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<IdentChain> scan_ident_chains(std::string_view stripped) {
    std::vector<IdentChain> chains;
    std::size_t i = 0;
    const std::size_t n = stripped.size();

    auto skip_ws = [&](std::size_t p) {
        while (p < n && (stripped[p] == ' ' || stripped[p] == '\t' || stripped[p] == '\n' || stripped[p] == '\r'))
            ++p;
        return p;
    };

    char prev_significant = '\0';
    while (i < n) {
        char c = stripped[i];
        if (!is_ident_start(c)) {
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r')
                prev_significant = c;
            ++i;
            continue;
        }
        // An identifier right after '.' is a member access on something the
        // chain scanner already consumed (e.g. `build()` in `f().build()`),
        // or a floating-point suffix; never the start of a type chain.
        if (prev_significant == '.' || (prev_significant >= '0' && prev_significant <= '9')) {
            while (i < n && is_ident_char(stripped[i]))
                ++i;
            prev_significant = 'x';
            continue;
        }
        prev_significant = 'x';
        IdentChain chain;
        while (true) {
            std::size_t start = i;
            while (i < n && is_ident_char(stripped[i]))
                ++i;
            chain.segments.emplace_back(stripped.substr(start, i - start));
            std::size_t after = skip_ws(i);
            if (after < n && stripped[after] == '.') {
                std::size_t next = skip_ws(after + 1);
                if (next < n && is_ident_start(stripped[next])) {
                    i = next;
                    continue;
                }
            }
            break;
        }
        chains.push_back(std::move(chain));
    }
    return chains;
}

} // namespace modsem::javalex
