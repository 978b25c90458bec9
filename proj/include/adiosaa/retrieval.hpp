#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "adiosaa/core.hpp"

namespace adiosaa {

// Entries sorted by score descending, ties broken by ascending source index;
// indices are unique and every source sentence appears exactly once.
struct RankedList {
    std::vector<std::pair<int, double>> entries;

    bool operator==(const RankedList&) const = default;
};

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

// Lowercased tokens split on every ASCII non-alphanumeric character.
// Bytes >= 0x80 are kept inside tokens so multi-byte UTF-8 words survive.
std::vector<std::string> tokenize(const std::string& text);

// Okapi BM25 over the document's sentences, one sentence per retrieval unit.
// Query terms are deduplicated (each unique term counted once).
// Throws DataError if the document tokenizes to nothing at all.
RankedList bm25_rank(const std::string& query, const SourceDocument& document,
                     const Bm25Params& params = {});

// Batched embedding service; returns one vector per input text, same order,
// fixed dimension.
class EmbeddingScorer {
  public:
    virtual ~EmbeddingScorer() = default;
    virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) = 0;
};

// Pairwise relevance service; returns one probability in [0,1] per
// (query, text) pair, same order.
class RelevanceScorer {
  public:
    virtual ~RelevanceScorer() = default;
    virtual std::vector<double> score(
        const std::vector<std::pair<std::string, std::string>>& pairs) = 0;
};

// Cosine similarity between the query embedding and each sentence embedding.
RankedList dense_rank(const std::string& query, const SourceDocument& document,
                      EmbeddingScorer& embedder);

// Relevance probability of each sentence with respect to the query.
RankedList pairwise_rank(const std::string& query, const SourceDocument& document,
                         RelevanceScorer& scorer);

using Ranker = std::function<RankedList(const std::string& query, const SourceDocument&)>;

// Union of the top-`limit` ranked sentences per answer sentence (each answer
// sentence as the query), returned in original document order with original
// indices. Identity when the document already fits the limit.
SourceDocument prune_sources(const SourceDocument& document, const AnswerRecord& answer,
                             const Ranker& ranker, std::size_t limit);

}  // namespace adiosaa
