#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adiosaa/attributor.hpp"
#include "adiosaa/decomposer.hpp"
#include "adiosaa/http.hpp"
#include "adiosaa/retrieval.hpp"

namespace adiosaa {

// POST {"texts": [...]} -> {"embeddings": [[...], ...]}, batched.
class HttpEmbeddingScorer final : public EmbeddingScorer {
  public:
    explicit HttpEmbeddingScorer(HttpConfig config) : client_(std::move(config)) {}
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;

  private:
    JsonHttpClient client_;
};

// POST {"pairs": [{"query","text"}, ...]} -> {"scores": [...]}, batched.
class HttpRelevanceScorer final : public RelevanceScorer {
  public:
    explicit HttpRelevanceScorer(HttpConfig config) : client_(std::move(config)) {}
    std::vector<double> score(
        const std::vector<std::pair<std::string, std::string>>& pairs) override;

  private:
    JsonHttpClient client_;
};

// POST {"pairs": [{"premise","hypothesis"}, ...]} -> {"probabilities": [...]}.
// The contract any NLI entailment server must expose to act as the scorer.
class HttpEntailmentScorer final : public EntailmentScorer {
  public:
    explicit HttpEntailmentScorer(HttpConfig config) : client_(std::move(config)) {}
    double score(const std::string& premise, const std::string& hypothesis) override;
    std::vector<double> score_batch(
        const std::vector<std::pair<std::string, std::string>>& pairs) override;

  private:
    JsonHttpClient client_;
};

// POST {"model", "prompt", "temperature"} -> {"text"}. Temperature is
// pinned to 0 for reproducible decompositions.
class HttpLlmClient final : public LlmClient {
  public:
    HttpLlmClient(HttpConfig config, std::string model)
        : client_(std::move(config)), model_(std::move(model)) {}
    std::string complete(const std::string& prompt) override;

  private:
    JsonHttpClient client_;
    std::string model_;
};

}  // namespace adiosaa
