#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adiosaa/core.hpp"
#include "adiosaa/decomposer.hpp"
#include "adiosaa/retrieval.hpp"

namespace adiosaa {

// Entailment probability of `hypothesis` given `premise`, in [0,1].
// Implementations must be deterministic for a fixed pair within a run.
class EntailmentScorer {
  public:
    virtual ~EntailmentScorer() = default;
    virtual double score(const std::string& premise, const std::string& hypothesis) = 0;
    // Batched variant; the default loops over score(). Remote scorers
    // override this to send one request per batch.
    virtual std::vector<double> score_batch(
        const std::vector<std::pair<std::string, std::string>>& pairs) {
        std::vector<double> out;
        out.reserve(pairs.size());
        for (const auto& p : pairs) out.push_back(score(p.first, p.second));
        return out;
    }
};

struct SelectionConfig {
    double delta = 0.3;
    double entail_threshold = 0.5;
    // Unset means one iteration per document sentence.
    std::optional<std::size_t> max_iterations;
};

// Supporting sentences selected for one information unit, in admission
// order; consecutive selection scores grow by more than delta.
struct UnitAttribution {
    InformationUnit unit;
    std::vector<std::pair<int, double>> selected;
};

// Final ranked attributions for one answer sentence: unique source indices,
// scores non-increasing, ties broken by ascending index.
struct AttributionList {
    int answer_sentence_index = 0;
    std::vector<std::pair<int, double>> attributions;

    bool operator==(const AttributionList&) const = default;
};

// Greedy selection: each iteration scores every remaining sentence appended
// to the current selection (premise = selected + candidate, ascending
// document order, joined by single spaces) and admits the argmax iff it
// beats the previous score by more than delta. A final score below the
// entailment threshold empties the selection.
UnitAttribution optimal_select(const InformationUnit& unit, const SourceDocument& document,
                               EntailmentScorer& scorer, const SelectionConfig& cfg = {});

// The -OS ablation: score every single sentence as premise, keep those at
// or above the entailment threshold, sorted by score descending.
UnitAttribution ranked_select(const InformationUnit& unit, const SourceDocument& document,
                              EntailmentScorer& scorer, const SelectionConfig& cfg = {});

// Pool unit selections for one answer sentence, keep the maximum score per
// source index, sort by score descending with ascending-index tiebreak.
AttributionList merge_unit_attributions(const std::vector<UnitAttribution>& units,
                                        int sentence_index);

// Deterministic offline stand-in for an NLI service:
// |unique tokens(hypothesis) ∩ unique tokens(premise)| / |unique tokens(hypothesis)|.
double lexical_entailment_proxy(const std::string& premise, const std::string& hypothesis);

class LexicalProxyScorer final : public EntailmentScorer {
  public:
    double score(const std::string& premise, const std::string& hypothesis) override {
        return lexical_entailment_proxy(premise, hypothesis);
    }
};

// Guards a scorer with a per-record invocation cap; throws BudgetError once
// the cap would be exceeded.
class BudgetedScorer final : public EntailmentScorer {
  public:
    BudgetedScorer(EntailmentScorer& inner, std::uint64_t budget)
        : inner_(&inner), budget_(budget) {}

    double score(const std::string& premise, const std::string& hypothesis) override;
    std::vector<double> score_batch(
        const std::vector<std::pair<std::string, std::string>>& pairs) override;

    std::uint64_t calls() const { return calls_; }

  private:
    void charge(std::uint64_t n);

    EntailmentScorer* inner_;
    std::uint64_t budget_;
    std::uint64_t calls_ = 0;
};

enum class SelectionMode { optimal, ranked };

struct PruneSpec {
    Ranker ranker;
    std::size_t limit = 150;
};

// Runtime wiring for attribute_answer. Modes map to the four systems:
// full pipeline = (llm, optimal); -D = (identity, optimal);
// -OS = (llm, ranked); -D-OS = (identity, ranked).
struct PipelineComponents {
    Decomposer* decomposer = nullptr;
    EntailmentScorer* scorer = nullptr;
    SelectionMode selection = SelectionMode::optimal;
    SelectionConfig selection_cfg;
    std::optional<PruneSpec> prune;
    std::uint64_t scorer_call_budget = 10000;
};

struct AttributionOutcome {
    std::vector<AttributionList> lists;
    std::uint64_t scorer_calls = 0;
};

// Full per-record pipeline: prune sources once per record (union over
// answer sentences), then decompose, select per unit and merge per answer
// sentence. Component errors abort the record with question id and
// sentence index attached.
AttributionOutcome attribute_answer(const AnswerRecord& record, const SourceDocument& document,
                                    const PipelineComponents& pipeline);

}  // namespace adiosaa
