#include "adiosaa/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace adiosaa {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) {
            throw ConfigError(where + ": unknown key \"" + key + "\"");
        }
    }
}

HttpConfig make_http(const std::string& url, double timeout_s, int retries,
                     std::size_t batch_size, const std::string& api_key_env = {}) {
    HttpConfig http;
    http.base_url = url;
    http.timeout_s = timeout_s;
    http.retries = retries;
    http.batch_size = batch_size;
    http.api_key_env = api_key_env;
    return http;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ConfigError("config " + path.string() + " is not a JSON object");
    }

    PipelineConfig cfg;
    try {
        reject_unknown_keys(
            j, {"decomposer", "selection", "scorer", "prune", "bm25", "cache_path", "workers"},
            path.string());

        if (j.contains("decomposer")) {
            const auto& d = j["decomposer"];
            reject_unknown_keys(
                d, {"backend", "endpoint", "model", "api_key_env", "timeout_s", "retries"},
                "decomposer");
            const std::string backend = d.value("backend", "identity");
            if (backend == "identity") {
                cfg.decomposer = DecomposerBackend::identity;
            } else if (backend == "llm") {
                cfg.decomposer = DecomposerBackend::llm;
            } else {
                throw ConfigError("decomposer.backend must be identity or llm, got \"" + backend +
                                  "\"");
            }
            cfg.llm_endpoint = d.value("endpoint", "");
            cfg.llm_model = d.value("model", "");
            cfg.api_key_env = d.value("api_key_env", "");
            cfg.llm_timeout_s = d.value("timeout_s", 60.0);
            cfg.llm_retries = d.value("retries", 2);
        }

        if (j.contains("selection")) {
            const auto& s = j["selection"];
            reject_unknown_keys(s, {"mode", "delta", "entail_threshold", "max_iterations"},
                                "selection");
            const std::string mode = s.value("mode", "optimal");
            if (mode == "optimal") {
                cfg.selection = SelectionMode::optimal;
            } else if (mode == "ranked") {
                cfg.selection = SelectionMode::ranked;
            } else {
                throw ConfigError("selection.mode must be optimal or ranked, got \"" + mode +
                                  "\"");
            }
            cfg.thresholds.delta = s.value("delta", 0.3);
            cfg.thresholds.entail_threshold = s.value("entail_threshold", 0.5);
            if (s.contains("max_iterations") && !s["max_iterations"].is_null()) {
                const long long mi = s["max_iterations"].get<long long>();
                if (mi < 1) throw ConfigError("selection.max_iterations must be >= 1");
                cfg.thresholds.max_iterations = static_cast<std::size_t>(mi);
            }
            if (cfg.thresholds.delta < 0.0) throw ConfigError("selection.delta must be >= 0");
            if (cfg.thresholds.entail_threshold < 0.0 || cfg.thresholds.entail_threshold > 1.0) {
                throw ConfigError("selection.entail_threshold must be in [0,1]");
            }
        }

        if (j.contains("scorer")) {
            const auto& s = j["scorer"];
            reject_unknown_keys(
                s, {"backend", "endpoint", "timeout_s", "retries", "batch_size", "call_budget"},
                "scorer");
            const std::string backend = s.value("backend", "lexical_proxy");
            if (backend == "lexical_proxy") {
                cfg.scorer = ScorerBackend::lexical_proxy;
            } else if (backend == "nli_service") {
                cfg.scorer = ScorerBackend::nli_service;
            } else {
                throw ConfigError("scorer.backend must be lexical_proxy or nli_service, got \"" +
                                  backend + "\"");
            }
            cfg.nli_endpoint = s.value("endpoint", "");
            cfg.scorer_timeout_s = s.value("timeout_s", 30.0);
            cfg.scorer_retries = s.value("retries", 2);
            cfg.batch_size = s.value("batch_size", static_cast<std::size_t>(32));
            cfg.scorer_call_budget = s.value("call_budget", static_cast<std::uint64_t>(10000));
        }

        if (j.contains("prune") && !j["prune"].is_null()) {
            const auto& p = j["prune"];
            reject_unknown_keys(p, {"ranker", "limit", "endpoint"}, "prune");
            PruneConfig prune;
            const std::string ranker = p.value("ranker", "bm25");
            if (ranker == "bm25") {
                prune.ranker = PruneRanker::bm25;
            } else if (ranker == "dense") {
                prune.ranker = PruneRanker::dense;
            } else if (ranker == "pairwise") {
                prune.ranker = PruneRanker::pairwise;
            } else {
                throw ConfigError("prune.ranker must be bm25, dense or pairwise, got \"" + ranker +
                                  "\"");
            }
            const long long limit = p.value("limit", 150LL);
            if (limit < 1) throw ConfigError("prune.limit must be >= 1");
            prune.limit = static_cast<std::size_t>(limit);
            prune.endpoint = p.value("endpoint", "");
            cfg.prune = std::move(prune);
        }

        if (j.contains("bm25")) {
            const auto& b = j["bm25"];
            reject_unknown_keys(b, {"k1", "b"}, "bm25");
            cfg.bm25.k1 = b.value("k1", 1.2);
            cfg.bm25.b = b.value("b", 0.75);
            if (cfg.bm25.k1 <= 0.0) throw ConfigError("bm25.k1 must be > 0");
            if (cfg.bm25.b < 0.0 || cfg.bm25.b > 1.0) throw ConfigError("bm25.b must be in [0,1]");
        }

        cfg.cache_path = j.value("cache_path", "");
        cfg.workers = j.value("workers", 1);
        if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    } catch (const json::exception& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }

    if (cfg.decomposer == DecomposerBackend::llm && cfg.llm_endpoint.empty()) {
        throw ConfigError("decomposer.backend=llm requires decomposer.endpoint");
    }
    if (cfg.scorer == ScorerBackend::nli_service && cfg.nli_endpoint.empty()) {
        throw ConfigError("scorer.backend=nli_service requires scorer.endpoint");
    }
    if (cfg.prune && cfg.prune->ranker != PruneRanker::bm25 && cfg.prune->endpoint.empty()) {
        throw ConfigError("prune.ranker=dense|pairwise requires prune.endpoint");
    }
    return cfg;
}

std::string config_canonical_json(const PipelineConfig& cfg) {
    ordered_json j;
    j["decomposer"] = {
        {"backend", cfg.decomposer == DecomposerBackend::identity ? "identity" : "llm"},
        {"endpoint", cfg.llm_endpoint},
        {"model", cfg.llm_model},
        {"api_key_env", cfg.api_key_env},
        {"timeout_s", cfg.llm_timeout_s},
        {"retries", cfg.llm_retries}};
    ordered_json selection = {
        {"mode", cfg.selection == SelectionMode::optimal ? "optimal" : "ranked"},
        {"delta", cfg.thresholds.delta},
        {"entail_threshold", cfg.thresholds.entail_threshold}};
    if (cfg.thresholds.max_iterations) {
        selection["max_iterations"] = *cfg.thresholds.max_iterations;
    } else {
        selection["max_iterations"] = nullptr;
    }
    j["selection"] = std::move(selection);
    j["scorer"] = {
        {"backend", cfg.scorer == ScorerBackend::lexical_proxy ? "lexical_proxy" : "nli_service"},
        {"endpoint", cfg.nli_endpoint},
        {"timeout_s", cfg.scorer_timeout_s},
        {"retries", cfg.scorer_retries},
        {"batch_size", cfg.batch_size},
        {"call_budget", cfg.scorer_call_budget}};
    if (cfg.prune) {
        const char* ranker = cfg.prune->ranker == PruneRanker::bm25      ? "bm25"
                             : cfg.prune->ranker == PruneRanker::dense   ? "dense"
                                                                         : "pairwise";
        j["prune"] = {{"ranker", ranker}, {"limit", cfg.prune->limit},
                      {"endpoint", cfg.prune->endpoint}};
    } else {
        j["prune"] = nullptr;
    }
    j["bm25"] = {{"k1", cfg.bm25.k1}, {"b", cfg.bm25.b}};
    j["cache_path"] = cfg.cache_path;
    j["workers"] = cfg.workers;
    return j.dump();
}

PipelineRuntime build_runtime(const PipelineConfig& cfg, DecompositionCache* cache) {
    PipelineRuntime rt;

    if (cfg.decomposer == DecomposerBackend::identity) {
        rt.decomposer_backend = std::make_unique<IdentityDecomposer>();
    } else {
        rt.llm_client = std::make_unique<HttpLlmClient>(
            make_http(cfg.llm_endpoint, cfg.llm_timeout_s, cfg.llm_retries, 1, cfg.api_key_env),
            cfg.llm_model);
        rt.decomposer_backend = std::make_unique<LlmDecomposer>(*rt.llm_client, cfg.llm_model);
    }
    if (cache != nullptr) {
        rt.decomposer = std::make_unique<CachingDecomposer>(*rt.decomposer_backend, *cache);
    }

    if (cfg.scorer == ScorerBackend::lexical_proxy) {
        rt.scorer = std::make_unique<LexicalProxyScorer>();
    } else {
        rt.scorer = std::make_unique<HttpEntailmentScorer>(
            make_http(cfg.nli_endpoint, cfg.scorer_timeout_s, cfg.scorer_retries,
                      cfg.batch_size));
    }

    rt.components.decomposer = rt.decomposer ? rt.decomposer.get() : rt.decomposer_backend.get();
    rt.components.scorer = rt.scorer.get();
    rt.components.selection = cfg.selection;
    rt.components.selection_cfg = cfg.thresholds;
    rt.components.scorer_call_budget = cfg.scorer_call_budget;

    if (cfg.prune) {
        PruneSpec spec;
        spec.limit = cfg.prune->limit;
        switch (cfg.prune->ranker) {
            case PruneRanker::bm25: {
                const Bm25Params params = cfg.bm25;
                spec.ranker = [params](const std::string& query, const SourceDocument& doc) {
                    return bm25_rank(query, doc, params);
                };
                break;
            }
            case PruneRanker::dense: {
                rt.embedder = std::make_unique<HttpEmbeddingScorer>(
                    make_http(cfg.prune->endpoint, cfg.scorer_timeout_s, cfg.scorer_retries,
                              cfg.batch_size));
                EmbeddingScorer* embedder = rt.embedder.get();
                spec.ranker = [embedder](const std::string& query, const SourceDocument& doc) {
                    return dense_rank(query, doc, *embedder);
                };
                break;
            }
            case PruneRanker::pairwise: {
                rt.relevance = std::make_unique<HttpRelevanceScorer>(
                    make_http(cfg.prune->endpoint, cfg.scorer_timeout_s, cfg.scorer_retries,
                              cfg.batch_size));
                RelevanceScorer* relevance = rt.relevance.get();
                spec.ranker = [relevance](const std::string& query, const SourceDocument& doc) {
                    return pairwise_rank(query, doc, *relevance);
                };
                break;
            }
        }
        rt.components.prune = std::move(spec);
    }
    return rt;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    ordered_json j;
    j["config_hash"] = m.config_hash;
    j["dataset_path"] = m.dataset_path;
    j["dataset_hash"] = m.dataset_hash;
    j["library_version"] = m.library_version;
    j["prompt_template_version"] = m.prompt_template_version;
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
    j["records_total"] = m.records_total;
    j["records_failed"] = m.records_failed;
    j["scorer_calls"] = m.scorer_calls;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write manifest " + path.string());
    out << j.dump(2) << '\n';
}

std::string hash_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64_hex(buffer.str());
}

}  // namespace adiosaa
