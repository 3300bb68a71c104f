#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "modsem/tokens.hpp"

namespace modsem {

// The four per-node document representations.
enum class Scheme {
    NameImport, // dense vectors for cleaned package/class names, imported
    CodeImport, // dense vectors for source identifiers, imported
    WordVector, // mean of pretrained word vectors over identifier tokens
    Tfidf,      // bag of words over lemmatized identifier tokens
};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct EmbeddingMatrix {
    Scheme scheme = Scheme::Tfidf;
    std::size_t dimension = 0;
    std::map<std::string, std::vector<double>> vectors; // node -> vector

    const std::vector<double>& vector_of(const std::string& node) const;
    // Checks finite entries, uniform dimension, and (when expected is given)
    // exact node alignment; throws DomainError otherwise.
    void validate(const std::set<std::string>* expected_nodes = nullptr) const;
};

struct WordVectorTable {
    std::size_t dimension = 0;
    std::unordered_map<std::string, std::vector<double>> entries;
};

struct EmbeddingDiagnostics {
    std::vector<std::string> zero_vector_nodes; // documents that embedded to zero
    std::size_t oov_tokens = 0;
    std::vector<std::string> warnings;
};

// TF-IDF with the top `vocab_cap` corpus terms (ties broken
// lexicographically), weight tf * (ln((1+N)/(1+df)) + 1), rows
// L2-normalized. Columns follow the sorted selected vocabulary.
EmbeddingMatrix build_tfidf(const std::vector<TokenDocument>& docs, std::size_t vocab_cap = 1000,
                            EmbeddingDiagnostics* diag = nullptr);

// Mean vector of in-vocabulary tokens; out-of-vocabulary tokens are skipped
// and counted. Empty or all-OOV documents give the zero vector.
std::vector<double> embed_with_vectors(const TokenDocument& doc, const WordVectorTable& table,
                                       std::size_t* oov_count = nullptr);

// embed_with_vectors over a whole corpus.
EmbeddingMatrix embed_documents(const std::vector<TokenDocument>& docs, const WordVectorTable& table,
                                EmbeddingDiagnostics* diag = nullptr);

// Node vector file: first line `#dim <d>`, then `node<TAB>v1 v2 ...`.
// The result covers exactly expected_nodes; unknown nodes are skipped with
// a warning, missing nodes raise DomainError naming them.
EmbeddingMatrix import_embeddings(const std::filesystem::path& file, const std::set<std::string>& expected_nodes,
                                  Scheme scheme, EmbeddingDiagnostics* diag = nullptr);

// Standard text vector format: header `count dim`, rows `word v1 .. vdim`.
// Duplicate words: last one wins with a warning.
WordVectorTable load_word_vectors(const std::filesystem::path& file, EmbeddingDiagnostics* diag = nullptr);

} // namespace modsem
