#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "adiosaa/attributor.hpp"
#include "adiosaa/clients.hpp"
#include "adiosaa/decomposer.hpp"

namespace adiosaa {

enum class DecomposerBackend { identity, llm };
enum class ScorerBackend { lexical_proxy, nli_service };
enum class PruneRanker { bm25, dense, pairwise };

struct PruneConfig {
    PruneRanker ranker = PruneRanker::bm25;
    std::size_t limit = 150;
    std::string endpoint;  // dense/pairwise ranker service
};

// Declarative pipeline description loaded from a JSON config file. The four
// systems of interest are four such files: (llm, optimal), (identity,
// optimal), (llm, ranked), (identity, ranked).
struct PipelineConfig {
    DecomposerBackend decomposer = DecomposerBackend::identity;
    std::string llm_endpoint;
    std::string llm_model;
    std::string api_key_env;
    double llm_timeout_s = 60.0;
    int llm_retries = 2;

    SelectionMode selection = SelectionMode::optimal;
    SelectionConfig thresholds;

    ScorerBackend scorer = ScorerBackend::lexical_proxy;
    std::string nli_endpoint;
    double scorer_timeout_s = 30.0;
    int scorer_retries = 2;
    std::size_t batch_size = 32;
    std::uint64_t scorer_call_budget = 10000;

    std::optional<PruneConfig> prune;
    Bm25Params bm25;

    std::string cache_path;
    int workers = 1;
};

PipelineConfig load_pipeline_config(const std::filesystem::path& path);

// Canonical JSON dump of a config (defaults filled in); hashed into the
// run manifest.
std::string config_canonical_json(const PipelineConfig& config);

// Owns the concrete components built from a PipelineConfig. Each worker
// thread builds its own runtime; the decomposition cache is shared and
// serializes its writes internally.
struct PipelineRuntime {
    std::unique_ptr<LlmClient> llm_client;
    std::unique_ptr<Decomposer> decomposer_backend;
    std::unique_ptr<Decomposer> decomposer;  // caching wrapper when a cache is set
    std::unique_ptr<EntailmentScorer> scorer;
    std::unique_ptr<EmbeddingScorer> embedder;
    std::unique_ptr<RelevanceScorer> relevance;
    PipelineComponents components;
};

PipelineRuntime build_runtime(const PipelineConfig& config, DecompositionCache* cache);

struct RunManifest {
    std::string config_hash;
    std::string dataset_path;
    std::string dataset_hash;
    std::string library_version = kLibraryVersion;
    std::string prompt_template_version = kPromptTemplateVersion;
    std::string started_at;
    std::string finished_at;
    std::uint64_t records_total = 0;
    std::uint64_t records_failed = 0;
    std::uint64_t scorer_calls = 0;
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

// FNV-1a hash of a file's bytes, hex encoded.
std::string hash_file(const std::filesystem::path& path);

}  // namespace adiosaa
