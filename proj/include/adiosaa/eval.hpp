#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adiosaa/attributor.hpp"
#include "adiosaa/datasets.hpp"

namespace adiosaa {

struct SentenceEval {
    int k = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool evaluated = true;
};

enum class Averaging { macro, micro };

struct KMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const KMetrics&) const = default;
};

struct MetricsReport {
    std::map<int, KMetrics> per_k;
    std::uint64_t total_sentences = 0;
    std::uint64_t filtered_extractive = 0;
    std::uint64_t filtered_empty_gold = 0;
    std::uint64_t evaluated = 0;
    Averaging averaging = Averaging::macro;

    bool operator==(const MetricsReport&) const = default;
};

// P/R/F1 over the first min(k, |pred|) predictions. Precision divides by
// |pred_k| (not k); empty pred_k gives zeros. Gold must be non-empty.
SentenceEval score_sentence(const AttributionList& pred, const std::set<int>& gold, int k);

struct EvalOptions {
    std::vector<int> ks = {1, 2, 4};
    Averaging averaging = Averaging::macro;
};

// Macro-averages per-sentence metrics across all records, skipping
// extractive sentences and sentences without gold attributions.
// Predictions must align 1:1 with answer sentences.
MetricsReport evaluate(
    const std::vector<std::pair<CanonicalRecord, std::vector<AttributionList>>>& data,
    const EvalOptions& options = {});

enum class ReportFormat { table, json };

// Table format uses 3-decimal "(P/R/F1)@k" cells; json keeps full precision
// and round-trips through report_from_json.
std::string emit_report(const MetricsReport& report, ReportFormat format);

MetricsReport report_from_json(const std::string& text);

}  // namespace adiosaa
