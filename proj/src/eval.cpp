#include "adiosaa/eval.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace adiosaa {

namespace {

double f1_of(double p, double r) {
    return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

std::string format3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

SentenceEval score_sentence(const AttributionList& pred, const std::set<int>& gold, int k) {
    if (k < 1) throw DataError("score_sentence: k must be >= 1");
    if (gold.empty()) throw DataError("score_sentence: empty gold set (filter upstream)");

    const std::size_t take = std::min(static_cast<std::size_t>(k), pred.attributions.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < take; ++i) {
        if (gold.count(pred.attributions[i].first)) ++hits;
    }
    SentenceEval out;
    out.k = k;
    out.precision = take == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(take);
    out.recall = static_cast<double>(hits) / static_cast<double>(gold.size());
    out.f1 = f1_of(out.precision, out.recall);
    return out;
}

MetricsReport evaluate(
    const std::vector<std::pair<CanonicalRecord, std::vector<AttributionList>>>& data,
    const EvalOptions& options) {
    MetricsReport report;
    report.averaging = options.averaging;
    for (int k : options.ks) report.per_k[k] = {};

    struct MicroAcc {
        std::uint64_t hits = 0;
        std::uint64_t predicted = 0;
        std::uint64_t gold = 0;
    };
    std::map<int, MicroAcc> micro;

    for (const auto& [record, predictions] : data) {
        if (predictions.size() != record.answer.sentences.size()) {
            throw DataError("predictions misaligned for question_id=" + record.question_id +
                            " answer_id=" + record.answer_id + ": " +
                            std::to_string(predictions.size()) + " lists for " +
                            std::to_string(record.answer.sentences.size()) + " sentences");
        }
        for (std::size_t i = 0; i < predictions.size(); ++i) {
            const auto& sentence = record.answer.sentences[i];
            const auto& pred = predictions[i];
            if (pred.answer_sentence_index != sentence.index) {
                throw DataError("predictions misaligned for question_id=" + record.question_id +
                                " answer_id=" + record.answer_id + ": prediction for sentence " +
                                std::to_string(pred.answer_sentence_index) + " at position " +
                                std::to_string(i));
            }
            ++report.total_sentences;
            if (is_extractive(sentence.text, record.document)) {
                ++report.filtered_extractive;
                continue;
            }
            if (sentence.gold_attributions.empty()) {
                ++report.filtered_empty_gold;
                continue;
            }
            ++report.evaluated;
            for (int k : options.ks) {
                SentenceEval e = score_sentence(pred, sentence.gold_attributions, k);
                auto& agg = report.per_k[k];
                agg.precision += e.precision;
                agg.recall += e.recall;
                agg.f1 += e.f1;

                const std::size_t take =
                    std::min(static_cast<std::size_t>(k), pred.attributions.size());
                std::size_t hits = 0;
                for (std::size_t p = 0; p < take; ++p) {
                    if (sentence.gold_attributions.count(pred.attributions[p].first)) ++hits;
                }
                micro[k].hits += hits;
                micro[k].predicted += take;
                micro[k].gold += sentence.gold_attributions.size();
            }
        }
    }

    for (int k : options.ks) {
        auto& agg = report.per_k[k];
        if (options.averaging == Averaging::macro) {
            if (report.evaluated > 0) {
                const double n = static_cast<double>(report.evaluated);
                agg.precision /= n;
                agg.recall /= n;
                agg.f1 /= n;
            } else {
                agg = {};
            }
        } else {
            const auto& m = micro[k];
            agg.precision =
                m.predicted > 0 ? static_cast<double>(m.hits) / static_cast<double>(m.predicted)
                                : 0.0;
            agg.recall =
                m.gold > 0 ? static_cast<double>(m.hits) / static_cast<double>(m.gold) : 0.0;
            agg.f1 = f1_of(agg.precision, agg.recall);
        }
    }
    return report;
}

std::string emit_report(const MetricsReport& report, ReportFormat format) {
    if (format == ReportFormat::table) {
        std::ostringstream out;
        for (const auto& [k, m] : report.per_k) {
            out << "(P/R/F1)@" << k << ": " << format3(m.precision) << "/" << format3(m.recall)
                << "/" << format3(m.f1) << "\n";
        }
        out << "sentences: total=" << report.total_sentences
            << " filtered_extractive=" << report.filtered_extractive
            << " filtered_empty_gold=" << report.filtered_empty_gold
            << " evaluated=" << report.evaluated << "\n";
        if (report.evaluated == 0) {
            out << "warning: no evaluable sentences; metrics reported as 0\n";
        }
        return out.str();
    }

    nlohmann::ordered_json j;
    nlohmann::ordered_json per_k = nlohmann::ordered_json::object();
    for (const auto& [k, m] : report.per_k) {
        per_k[std::to_string(k)] = {{"p", m.precision}, {"r", m.recall}, {"f1", m.f1}};
    }
    j["k"] = std::move(per_k);
    j["counts"] = {{"total_sentences", report.total_sentences},
                   {"filtered_extractive", report.filtered_extractive},
                   {"filtered_empty_gold", report.filtered_empty_gold},
                   {"evaluated", report.evaluated}};
    j["averaging"] = report.averaging == Averaging::macro ? "macro" : "micro";
    if (report.evaluated == 0) j["warning_no_evaluated_sentences"] = true;
    return j.dump(2);
}

MetricsReport report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw DataError("malformed report JSON");
    MetricsReport report;
    try {
        for (const auto& [k, m] : j.at("k").items()) {
            report.per_k[std::stoi(k)] = {m.at("p").get<double>(), m.at("r").get<double>(),
                                          m.at("f1").get<double>()};
        }
        const auto& counts = j.at("counts");
        report.total_sentences = counts.at("total_sentences").get<std::uint64_t>();
        report.filtered_extractive = counts.at("filtered_extractive").get<std::uint64_t>();
        report.filtered_empty_gold = counts.at("filtered_empty_gold").get<std::uint64_t>();
        report.evaluated = counts.at("evaluated").get<std::uint64_t>();
        report.averaging =
            j.value("averaging", "macro") == std::string("micro") ? Averaging::micro
                                                                  : Averaging::macro;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report JSON: ") + e.what());
    }
    return report;
}

}  // namespace adiosaa
