#include "modsem/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "modsem/errors.hpp"

namespace modsem {

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::NameImport: return "name-import";
    case Scheme::CodeImport: return "code-import";
    case Scheme::WordVector: return "word-vector";
    case Scheme::Tfidf: return "tfidf";
    }
    return "tfidf";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "name-import")
        return Scheme::NameImport;
    if (name == "code-import")
        return Scheme::CodeImport;
    if (name == "word-vector")
        return Scheme::WordVector;
    if (name == "tfidf")
        return Scheme::Tfidf;
    throw ConfigError("unknown scheme '" + name +
                      "' (expected tfidf, name-import, code-import or word-vector)");
}

const std::vector<double>& EmbeddingMatrix::vector_of(const std::string& node) const {
    auto it = vectors.find(node);
    if (it == vectors.end())
        throw DomainError("no embedding vector for node " + node);
    return it->second;
}

void EmbeddingMatrix::validate(const std::set<std::string>* expected_nodes) const {
    for (const auto& [node, vec] : vectors) {
        if (vec.size() != dimension)
            throw DomainError("vector for " + node + " has dimension " + std::to_string(vec.size()) +
                              ", expected " + std::to_string(dimension));
        for (double x : vec) {
            if (!std::isfinite(x))
                throw DomainError("non-finite entry in vector for " + node);
        }
    }
    if (expected_nodes) {
        std::string missing;
        for (const auto& n : *expected_nodes) {
            if (!vectors.count(n))
                missing += missing.empty() ? n : ", " + n;
        }
        if (!missing.empty())
            throw DomainError("embedding matrix missing nodes: " + missing);
        if (vectors.size() != expected_nodes->size())
            throw DomainError("embedding matrix has extra nodes beyond the analyzed graph");
    }
}

EmbeddingMatrix build_tfidf(const std::vector<TokenDocument>& docs, std::size_t vocab_cap,
                            EmbeddingDiagnostics* diag) {
    if (docs.empty())
        throw DomainError("tfidf requires at least one document");
    if (vocab_cap == 0)
        throw DomainError("vocabulary cap must be positive");

    // Corpus frequencies and document frequencies in one pass.
    std::map<std::string, std::size_t> corpus_freq;
    std::map<std::string, std::size_t> doc_freq;
    for (const auto& doc : docs) {
        std::map<std::string, std::size_t> seen;
        for (const auto& t : doc.tokens)
            ++seen[t];
        for (const auto& [t, count] : seen) {
            corpus_freq[t] += count;
            doc_freq[t] += 1;
        }
    }

    // Top terms by total corpus frequency, lexicographic tie-break. The map
    // is already sorted by term, so a stable sort on frequency keeps ties in
    // term order.
    std::vector<std::pair<std::string, std::size_t>> terms(corpus_freq.begin(), corpus_freq.end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (terms.size() > vocab_cap)
        terms.resize(vocab_cap);

    std::vector<std::string> vocab;
    vocab.reserve(terms.size());
    for (auto& [t, f] : terms)
        vocab.push_back(std::move(t));
    std::sort(vocab.begin(), vocab.end()); // column order

    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < vocab.size(); ++i)
        column[vocab[i]] = i;

    const double n_docs = static_cast<double>(docs.size());
    EmbeddingMatrix m;
    m.scheme = Scheme::Tfidf;
    m.dimension = vocab.size();
    for (const auto& doc : docs) {
        std::vector<double> vec(m.dimension, 0.0);
        std::map<std::string, std::size_t> tf;
        for (const auto& t : doc.tokens)
            ++tf[t];
        for (const auto& [t, count] : tf) {
            auto it = column.find(t);
            if (it == column.end())
                continue;
            double idf = std::log((1.0 + n_docs) / (1.0 + static_cast<double>(doc_freq[t]))) + 1.0;
            vec[it->second] = static_cast<double>(count) * idf;
        }
        double norm = 0;
        for (double x : vec)
            norm += x * x;
        if (norm > 0) {
            norm = std::sqrt(norm);
            for (double& x : vec)
                x /= norm;
        } else if (diag) {
            diag->zero_vector_nodes.push_back(doc.node);
        }
        m.vectors[doc.node] = std::move(vec);
    }
    m.validate();
    return m;
}

std::vector<double> embed_with_vectors(const TokenDocument& doc, const WordVectorTable& table,
                                       std::size_t* oov_count) {
    std::vector<double> sum(table.dimension, 0.0);
    std::size_t hits = 0, misses = 0;
    for (const auto& t : doc.tokens) {
        auto it = table.entries.find(t);
        if (it == table.entries.end()) {
            ++misses;
            continue;
        }
        for (std::size_t i = 0; i < table.dimension; ++i)
            sum[i] += it->second[i];
        ++hits;
    }
    if (oov_count)
        *oov_count = misses;
    if (hits > 0) {
        for (double& x : sum)
            x /= static_cast<double>(hits);
    }
    return sum;
}

EmbeddingMatrix embed_documents(const std::vector<TokenDocument>& docs, const WordVectorTable& table,
                                EmbeddingDiagnostics* diag) {
    EmbeddingMatrix m;
    m.scheme = Scheme::WordVector;
    m.dimension = table.dimension;
    for (const auto& doc : docs) {
        std::size_t oov = 0;
        std::vector<double> vec = embed_with_vectors(doc, table, &oov);
        if (diag) {
            diag->oov_tokens += oov;
            if (std::all_of(vec.begin(), vec.end(), [](double x) { return x == 0.0; }))
                diag->zero_vector_nodes.push_back(doc.node);
        }
        m.vectors[doc.node] = std::move(vec);
    }
    m.validate();
    return m;
}

EmbeddingMatrix import_embeddings(const std::filesystem::path& file, const std::set<std::string>& expected_nodes,
                                  Scheme scheme, EmbeddingDiagnostics* diag) {
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open embedding file " + file.string());

    std::string line;
    long lineno = 0;
    if (!std::getline(in, line))
        throw ParseError("empty embedding file " + file.string(), 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    std::size_t dim = 0;
    {
        std::istringstream hs(line);
        std::string tag;
        hs >> tag;
        if (tag != "#dim" || !(hs >> dim) || dim == 0)
            throw ParseError("expected '#dim <d>' header in " + file.string(), 1);
    }

    EmbeddingMatrix m;
    m.scheme = scheme;
    m.dimension = dim;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("expected node<TAB>values", lineno);
        std::string node = line.substr(0, tab);
        std::istringstream vs(line.substr(tab + 1));
        std::vector<double> vec;
        double x;
        while (vs >> x)
            vec.push_back(x);
        if (vec.size() != dim)
            throw ParseError("row for " + node + " has " + std::to_string(vec.size()) + " values, expected " +
                             std::to_string(dim), lineno);
        if (!expected_nodes.count(node)) {
            if (diag)
                diag->warnings.push_back("embedding row for unknown node " + node + " skipped");
            continue;
        }
        m.vectors[node] = std::move(vec);
    }
    m.validate(&expected_nodes);
    return m;
}

WordVectorTable load_word_vectors(const std::filesystem::path& file, EmbeddingDiagnostics* diag) {
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open word vector file " + file.string());

    std::string line;
    long lineno = 0;
    if (!std::getline(in, line))
        throw ParseError("empty word vector file (missing header)", 1);
    ++lineno;

    std::size_t count = 0, dim = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> count >> dim) || dim == 0 || (hs >> extra))
            throw ParseError("malformed 'count dim' header in " + file.string(), 1);
    }
    (void)count; // entries are counted as read; a short file is tolerated

    WordVectorTable table;
    table.dimension = dim;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream rs(line);
        std::string word;
        if (!(rs >> word))
            throw ParseError("malformed row", lineno);
        std::vector<double> vec;
        vec.reserve(dim);
        double x;
        while (rs >> x)
            vec.push_back(x);
        if (vec.size() != dim)
            throw ParseError("row for '" + word + "' has " + std::to_string(vec.size()) + " values, expected " +
                             std::to_string(dim), lineno);
        if (table.entries.count(word) && diag)
            diag->warnings.push_back("duplicate word vector for '" + word + "', keeping the last one");
        table.entries[word] = std::move(vec); // last wins
    }
    return table;
}

} // namespace modsem
