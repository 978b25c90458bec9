#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adiosaa/core.hpp"

namespace adiosaa {

// Prompt sent verbatim to the LLM, followed by the sentence text.
inline constexpr const char* kDecomposePrompt =
    "Please breakdown the following sentence into independent facts: ";

// Bumped whenever the prompt or the response parser changes, so cached
// decompositions from older versions stop matching.
inline constexpr const char* kPromptTemplateVersion = "v1/line-parser-v1";

// An atomic fact obtained by decomposing one answer sentence.
struct InformationUnit {
    int parent_sentence_index = 0;
    int unit_index = 0;
    std::string text;

    bool operator==(const InformationUnit&) const = default;
};

class Decomposer {
  public:
    virtual ~Decomposer() = default;
    // Stable identifier participating in cache keys.
    virtual std::string id() const = 0;
    virtual std::string model_id() const { return {}; }
    virtual std::vector<std::string> decompose_text(const std::string& sentence) = 0;
};

// The -D ablation: every sentence is its own single information unit.
class IdentityDecomposer final : public Decomposer {
  public:
    std::string id() const override { return "identity"; }
    std::vector<std::string> decompose_text(const std::string& sentence) override {
        return {sentence};
    }
};

// Completion transport used by LlmDecomposer; HTTP implementation lives in
// clients.hpp, tests plug in stubs.
class LlmClient {
  public:
    virtual ~LlmClient() = default;
    virtual std::string complete(const std::string& prompt) = 0;
};

// Prompts the LLM with kDecomposePrompt + sentence and parses the response
// as one unit per non-empty line, stripping list markers ("-", "*", "1.",
// "1)"). Zero parsed units fall back to the identity decomposition.
class LlmDecomposer final : public Decomposer {
  public:
    LlmDecomposer(LlmClient& client, std::string model);

    std::string id() const override { return "llm"; }
    std::string model_id() const override { return model_; }
    std::vector<std::string> decompose_text(const std::string& sentence) override;

    // Exposed for tests of the parser contract.
    static std::vector<std::string> parse_units(const std::string& response);

  private:
    LlmClient* client_;
    std::string model_;
};

struct DecompositionCacheEntry {
    std::string key;
    std::vector<std::string> units;
    std::string created_at;
    std::string template_version;

    bool operator==(const DecompositionCacheEntry&) const = default;
};

// Append-only JSONL cache keyed by hash of (decomposer id, model id,
// prompt-template version, sentence text). Entries written under a
// different template version are ignored at load time. Last write wins.
class DecompositionCache {
  public:
    explicit DecompositionCache(std::filesystem::path path);

    std::optional<DecompositionCacheEntry> lookup(const std::string& key) const;
    void store(DecompositionCacheEntry entry);

    static std::string make_key(const std::string& decomposer_id, const std::string& model_id,
                                const std::string& template_version, const std::string& sentence);

    std::size_t size() const;

  private:
    std::filesystem::path path_;
    std::unordered_map<std::string, DecompositionCacheEntry> entries_;
    mutable std::mutex mutex_;
};

// Wraps a backend with a persistent cache; a warm cache answers without any
// backend call.
class CachingDecomposer final : public Decomposer {
  public:
    CachingDecomposer(Decomposer& backend, DecompositionCache& cache);

    std::string id() const override { return backend_->id(); }
    std::string model_id() const override { return backend_->model_id(); }
    std::vector<std::string> decompose_text(const std::string& sentence) override;

  private:
    Decomposer* backend_;
    DecompositionCache* cache_;
};

// Decompose one answer sentence into >= 1 information units carrying the
// parent sentence index. Backend failures are annotated with that index.
std::vector<InformationUnit> decompose(const AnswerSentence& sentence, Decomposer& backend);

}  // namespace adiosaa
