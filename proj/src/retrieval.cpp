#include "adiosaa/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>

namespace adiosaa {

namespace {

bool token_char(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

void sort_ranked(RankedList& list) {
    std::sort(list.entries.begin(), list.entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (token_char(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

RankedList bm25_rank(const std::string& query, const SourceDocument& document,
                     const Bm25Params& params) {
    const std::size_t n = document.sentences.size();
    std::vector<std::unordered_map<std::string, int>> tf(n);
    std::vector<std::size_t> lengths(n, 0);
    std::unordered_map<std::string, int> df;
    std::size_t total_tokens = 0;

    for (std::size_t i = 0; i < n; ++i) {
        auto toks = tokenize(document.sentences[i].text);
        lengths[i] = toks.size();
        total_tokens += toks.size();
        for (auto& t : toks) ++tf[i][t];
        for (auto& [term, count] : tf[i]) {
            (void)count;
            ++df[term];
        }
    }
    if (total_tokens == 0) {
        throw DataError("bm25_rank: document has zero tokens (question_id=" +
                        document.question_id + ")");
    }
    const double avgdl = static_cast<double>(total_tokens) / static_cast<double>(n);
    const double nd = static_cast<double>(n);

    std::set<std::string> qterms;
    for (auto& t : tokenize(query)) qterms.insert(t);

    RankedList out;
    out.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double score = 0.0;
        for (const auto& term : qterms) {
            auto it = tf[i].find(term);
            if (it == tf[i].end()) continue;
            const double tfreq = static_cast<double>(it->second);
            const double d = static_cast<double>(df[term]);
            const double idf = std::log(1.0 + (nd - d + 0.5) / (d + 0.5));
            const double norm =
                1.0 - params.b + params.b * static_cast<double>(lengths[i]) / avgdl;
            score += idf * (tfreq * (params.k1 + 1.0)) / (tfreq + params.k1 * norm);
        }
        out.entries.emplace_back(document.sentences[i].index, score);
    }
    sort_ranked(out);
    return out;
}

RankedList dense_rank(const std::string& query, const SourceDocument& document,
                      EmbeddingScorer& embedder) {
    std::vector<std::string> texts;
    texts.reserve(document.sentences.size() + 1);
    texts.push_back(query);
    for (const auto& s : document.sentences) texts.push_back(s.text);

    auto embeddings = embedder.embed(texts);
    if (embeddings.size() != texts.size()) {
        throw RemoteError("dense_rank: embedder returned " + std::to_string(embeddings.size()) +
                          " vectors for " + std::to_string(texts.size()) + " texts");
    }
    const auto& q = embeddings[0];
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
        return acc;
    };
    const double qnorm = std::sqrt(dot(q, q));

    RankedList out;
    out.entries.reserve(document.sentences.size());
    for (std::size_t i = 0; i < document.sentences.size(); ++i) {
        const auto& e = embeddings[i + 1];
        if (e.size() != q.size()) {
            throw RemoteError("dense_rank: embedding dimension mismatch (query " +
                              std::to_string(q.size()) + ", sentence " +
                              std::to_string(document.sentences[i].index) + " has " +
                              std::to_string(e.size()) + ")");
        }
        const double denom = qnorm * std::sqrt(dot(e, e));
        const double cosine = denom > 0.0 ? dot(q, e) / denom : 0.0;
        out.entries.emplace_back(document.sentences[i].index, cosine);
    }
    sort_ranked(out);
    return out;
}

RankedList pairwise_rank(const std::string& query, const SourceDocument& document,
                         RelevanceScorer& scorer) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(document.sentences.size());
    for (const auto& s : document.sentences) pairs.emplace_back(query, s.text);

    auto scores = scorer.score(pairs);
    if (scores.size() != pairs.size()) {
        throw RemoteError("pairwise_rank: scorer returned " + std::to_string(scores.size()) +
                          " scores for " + std::to_string(pairs.size()) + " pairs");
    }
    RankedList out;
    out.entries.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!(scores[i] >= 0.0 && scores[i] <= 1.0)) {
            throw RemoteError("pairwise_rank: score " + std::to_string(scores[i]) +
                              " for sentence " + std::to_string(document.sentences[i].index) +
                              " is outside [0,1]");
        }
        out.entries.emplace_back(document.sentences[i].index, scores[i]);
    }
    sort_ranked(out);
    return out;
}

SourceDocument prune_sources(const SourceDocument& document, const AnswerRecord& answer,
                             const Ranker& ranker, std::size_t limit) {
    if (limit == 0) throw ConfigError("prune_sources: limit must be >= 1");
    if (document.sentences.size() <= limit) return document;

    std::set<int> kept;
    for (const auto& sentence : answer.sentences) {
        RankedList ranked = ranker(sentence.text, document);
        const std::size_t take = std::min(limit, ranked.entries.size());
        for (std::size_t i = 0; i < take; ++i) kept.insert(ranked.entries[i].first);
    }

    SourceDocument pruned;
    pruned.question_id = document.question_id;
    for (const auto& s : document.sentences) {
        if (kept.count(s.index)) pruned.sentences.push_back(s);
    }
    return pruned;
}

}  // namespace adiosaa
