#include "adiosaa/commands.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

namespace adiosaa {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kExitUsage;
    if (dynamic_cast<const RemoteError*>(&e)) return kExitRemote;
    return kExitData;
}

}  // namespace

void write_predictions(const std::vector<PredictionRecord>& predictions,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write predictions " + path.string());
    for (const auto& p : predictions) {
        ordered_json j;
        j["question_id"] = p.question_id;
        j["answer_id"] = p.answer_id;
        ordered_json sentences = ordered_json::array();
        for (const auto& list : p.lists) {
            ordered_json attrs = ordered_json::array();
            for (const auto& [idx, score] : list.attributions) {
                attrs.push_back({{"source_index", idx}, {"score", score}});
            }
            sentences.push_back(
                {{"index", list.answer_sentence_index}, {"attributions", std::move(attrs)}});
        }
        j["sentences"] = std::move(sentences);
        out << j.dump() << '\n';
    }
    if (!out) throw DataError("write failed for " + path.string());
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open predictions " + path.string());
    std::vector<PredictionRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw DataError(where + ": malformed JSON line");
        }
        try {
            PredictionRecord record;
            record.question_id = j.at("question_id").get<std::string>();
            record.answer_id = j.at("answer_id").get<std::string>();
            for (const auto& s : j.at("sentences")) {
                AttributionList list;
                list.answer_sentence_index = s.at("index").get<int>();
                for (const auto& a : s.at("attributions")) {
                    list.attributions.emplace_back(a.at("source_index").get<int>(),
                                                   a.at("score").get<double>());
                }
                record.lists.push_back(std::move(list));
            }
            out.push_back(std::move(record));
        } catch (const json::exception& e) {
            throw DataError(where + ": " + e.what());
        }
    }
    return out;
}

int cmd_reformat(const std::string& source, const std::filesystem::path& raw_dir,
                 const std::filesystem::path& out_path) {
    try {
        ReformatResult result;
        if (source == "verifiability") {
            result = reformat_verifiability(raw_dir);
        } else if (source == "hagrid") {
            result = reformat_hagrid(raw_dir);
        } else {
            throw ConfigError("unknown source \"" + source +
                              "\" (expected verifiability or hagrid)");
        }
        write_canonical(result.records, out_path);

        const auto drop_path = out_path.string() + ".drops.jsonl";
        if (!result.drops.empty()) {
            std::ofstream drops(drop_path, std::ios::app);  // drop-logs are append-only
            if (!drops) throw DataError("cannot write drop log " + drop_path);
            for (const auto& d : result.drops) {
                ordered_json j;
                j["question_id"] = d.question_id;
                j["answer_id"] = d.answer_id;
                j["reason"] = d.reason;
                drops << j.dump() << '\n';
            }
        }
        // status goes to stderr; stdout is reserved for machine-readable output
        std::cerr << "wrote " << result.records.size() << " records to " << out_path.string()
                  << "; dropped " << result.drops.size();
        if (!result.drops.empty()) std::cerr << " (reasons in " << drop_path << ")";
        std::cerr << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "reformat: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_stats(const std::filesystem::path& dataset_path, const std::string& format) {
    try {
        auto records = read_canonical(dataset_path);
        DatasetStats stats = compute_stats(records);
        const double per_all = avg_attributions_all_sentences(records);
        if (format == "json") {
            ordered_json j;
            j["size"] = stats.size;
            j["avg_source_sentences"] = stats.avg_source_sentences;
            j["avg_attributions_per_sentence"] = stats.avg_attributions_per_sentence;
            j["avg_attributions_per_sentence_all"] = per_all;
            j["avg_sentences_per_answer"] = stats.avg_sentences_per_answer;
            j["avg_answers_per_question"] = stats.avg_answers_per_question;
            std::cout << j.dump(2) << "\n";
        } else if (format == "table") {
            std::cout << "size: " << stats.size << "\n"
                      << "avg source sentences: " << stats.avg_source_sentences << "\n"
                      << "avg attributions per attributed sentence: "
                      << stats.avg_attributions_per_sentence << "\n"
                      << "avg attributions per sentence (all sentences): " << per_all << "\n"
                      << "avg sentences per answer: " << stats.avg_sentences_per_answer << "\n"
                      << "avg answers per question: " << stats.avg_answers_per_question << "\n";
        } else {
            throw ConfigError("unknown format \"" + format + "\" (expected table or json)");
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "stats: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& dataset_path,
            const std::filesystem::path& out_path, std::optional<int> workers_override,
            std::optional<std::size_t> limit_override) {
    try {
        PipelineConfig config = load_pipeline_config(config_path);
        if (workers_override) config.workers = *workers_override;
        if (limit_override) {
            if (!config.prune) {
                throw ConfigError("--limit given but the config has no prune section");
            }
            config.prune->limit = *limit_override;
        }

        auto records = read_canonical(dataset_path);

        std::unique_ptr<DecompositionCache> cache;
        if (!config.cache_path.empty()) {
            cache = std::make_unique<DecompositionCache>(config.cache_path);
        }

        RunManifest manifest;
        manifest.config_hash = fnv1a64_hex(config_canonical_json(config));
        manifest.dataset_path = dataset_path.string();
        manifest.dataset_hash = hash_file(dataset_path);
        manifest.started_at = utc_timestamp();
        manifest.records_total = records.size();

        struct Slot {
            std::optional<PredictionRecord> prediction;
            std::string error;
            bool remote = false;
        };
        std::vector<Slot> slots(records.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::uint64_t> scorer_calls{0};
        std::atomic<bool> config_failed{false};
        std::string config_error;
        std::mutex config_error_mutex;

        auto worker = [&]() {
            std::unique_ptr<PipelineRuntime> runtime;
            try {
                runtime = std::make_unique<PipelineRuntime>(build_runtime(config, cache.get()));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(config_error_mutex);
                config_error = e.what();
                config_failed = true;
                return;
            }
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= slots.size()) break;
                try {
                    auto outcome =
                        attribute_answer(records[i].answer, records[i].document,
                                         runtime->components);
                    scorer_calls += outcome.scorer_calls;
                    slots[i].prediction = PredictionRecord{
                        records[i].question_id, records[i].answer_id, std::move(outcome.lists)};
                } catch (const RemoteError& e) {
                    slots[i].error = e.what();
                    slots[i].remote = true;
                } catch (const std::exception& e) {
                    slots[i].error = e.what();
                }
            }
        };

        if (config.workers <= 1) {
            worker();
        } else {
            std::vector<std::thread> threads;
            threads.reserve(static_cast<std::size_t>(config.workers));
            for (int i = 0; i < config.workers; ++i) threads.emplace_back(worker);
            for (auto& t : threads) t.join();
        }
        if (config_failed) throw ConfigError(config_error);

        // Output ordering matches input ordering regardless of worker count.
        std::vector<PredictionRecord> predictions;
        predictions.reserve(slots.size());
        bool any_remote = false;
        std::uint64_t failed = 0;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].prediction) {
                predictions.push_back(std::move(*slots[i].prediction));
            } else {
                ++failed;
                any_remote = any_remote || slots[i].remote;
                std::cerr << "run: record " << records[i].question_id << "/"
                          << records[i].answer_id << " failed: " << slots[i].error << "\n";
            }
        }
        write_predictions(predictions, out_path);

        manifest.finished_at = utc_timestamp();
        manifest.records_failed = failed;
        manifest.scorer_calls = scorer_calls;
        write_manifest(manifest, out_path.string() + ".manifest.json");

        if (failed > 0) {
            std::cerr << "run: " << failed << " of " << records.size()
                      << " records failed; partial predictions written to " << out_path.string()
                      << "\n";
            return any_remote ? kExitRemote : kExitData;
        }
        std::cerr << "wrote " << predictions.size() << " prediction records to "
                  << out_path.string() << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "run: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_eval(const std::filesystem::path& dataset_path,
             const std::filesystem::path& predictions_path, const std::string& format) {
    try {
        if (format != "table" && format != "json") {
            throw ConfigError("unknown format \"" + format + "\" (expected table or json)");
        }
        auto records = read_canonical(dataset_path);
        auto predictions = read_predictions(predictions_path);

        std::map<std::pair<std::string, std::string>, const PredictionRecord*> by_key;
        for (const auto& p : predictions) {
            auto key = std::make_pair(p.question_id, p.answer_id);
            if (!by_key.emplace(key, &p).second) {
                throw DataError("duplicate prediction for question_id=" + p.question_id +
                                " answer_id=" + p.answer_id);
            }
        }

        std::vector<std::pair<CanonicalRecord, std::vector<AttributionList>>> data;
        data.reserve(records.size());
        for (auto& r : records) {
            auto it = by_key.find({r.question_id, r.answer_id});
            if (it == by_key.end()) {
                throw DataError("no prediction for question_id=" + r.question_id +
                                " answer_id=" + r.answer_id);
            }
            data.emplace_back(std::move(r), it->second->lists);
            by_key.erase(it);
        }
        if (!by_key.empty()) {
            const auto& key = by_key.begin()->first;
            throw DataError("prediction has no dataset record: question_id=" + key.first +
                            " answer_id=" + key.second);
        }

        MetricsReport report = evaluate(data);
        std::cout << emit_report(report,
                                 format == "json" ? ReportFormat::json : ReportFormat::table);
        if (format == "json") std::cout << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "eval: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_run_eval(const std::filesystem::path& config_path,
                 const std::filesystem::path& dataset_path,
                 const std::filesystem::path& out_path, const std::string& format,
                 std::optional<int> workers_override, std::optional<std::size_t> limit_override) {
    const int rc = cmd_run(config_path, dataset_path, out_path, workers_override, limit_override);
    if (rc != kExitOk) return rc;
    return cmd_eval(dataset_path, out_path, format);
}

}  // namespace adiosaa
