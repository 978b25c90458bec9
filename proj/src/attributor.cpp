#include "adiosaa/attributor.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace adiosaa {

namespace {

void check_probability(double value, const std::string& what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw RemoteError(what + ": entailment score " + std::to_string(value) +
                          " is outside [0,1]");
    }
}

// Premise = selected positions plus the candidate, ascending document
// order, joined by single spaces.
std::string build_premise(const SourceDocument& document, const std::vector<std::size_t>& selected,
                          std::size_t candidate) {
    std::vector<std::size_t> positions = selected;
    positions.push_back(candidate);
    std::sort(positions.begin(), positions.end());
    std::string premise;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i > 0) premise += ' ';
        premise += document.sentences[positions[i]].text;
    }
    return premise;
}

void sort_by_score_then_index(std::vector<std::pair<int, double>>& entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

}  // namespace

UnitAttribution optimal_select(const InformationUnit& unit, const SourceDocument& document,
                               EntailmentScorer& scorer, const SelectionConfig& cfg) {
    if (document.sentences.empty()) throw DataError("optimal_select: empty document");

    const std::size_t n = document.sentences.size();
    const std::size_t max_iterations = cfg.max_iterations.value_or(n);

    std::vector<std::size_t> selected;       // positions into document.sentences
    std::vector<bool> remaining(n, true);
    double prev_score = -1.0;

    UnitAttribution result{unit, {}};
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        std::vector<std::pair<std::string, std::string>> pairs;
        std::vector<std::size_t> candidates;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (!remaining[pos]) continue;
            pairs.emplace_back(build_premise(document, selected, pos), unit.text);
            candidates.push_back(pos);
        }
        if (candidates.empty()) break;

        auto scores = scorer.score_batch(pairs);
        if (scores.size() != pairs.size()) {
            throw RemoteError("optimal_select: scorer returned " + std::to_string(scores.size()) +
                              " scores for " + std::to_string(pairs.size()) + " premises");
        }

        double curr_score = -1.0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            check_probability(scores[i], "optimal_select");
            // strict > keeps the lowest index on ties (candidates ascend)
            if (scores[i] > curr_score) {
                curr_score = scores[i];
                best = candidates[i];
            }
        }

        if (curr_score > prev_score + cfg.delta) {
            selected.push_back(best);
            remaining[best] = false;
            prev_score = curr_score;
            result.selected.emplace_back(document.sentences[best].index, curr_score);
        } else {
            break;
        }
    }

    if (prev_score < cfg.entail_threshold) result.selected.clear();
    return result;
}

UnitAttribution ranked_select(const InformationUnit& unit, const SourceDocument& document,
                              EntailmentScorer& scorer, const SelectionConfig& cfg) {
    if (document.sentences.empty()) throw DataError("ranked_select: empty document");

    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(document.sentences.size());
    for (const auto& s : document.sentences) pairs.emplace_back(s.text, unit.text);

    auto scores = scorer.score_batch(pairs);
    if (scores.size() != pairs.size()) {
        throw RemoteError("ranked_select: scorer returned " + std::to_string(scores.size()) +
                          " scores for " + std::to_string(pairs.size()) + " premises");
    }

    UnitAttribution result{unit, {}};
    for (std::size_t i = 0; i < scores.size(); ++i) {
        check_probability(scores[i], "ranked_select");
        if (scores[i] >= cfg.entail_threshold) {
            result.selected.emplace_back(document.sentences[i].index, scores[i]);
        }
    }
    sort_by_score_then_index(result.selected);
    return result;
}

AttributionList merge_unit_attributions(const std::vector<UnitAttribution>& units,
                                        int sentence_index) {
    std::map<int, double> best;
    for (const auto& unit : units) {
        for (const auto& [idx, score] : unit.selected) {
            auto it = best.find(idx);
            if (it == best.end() || score > it->second) best[idx] = score;
        }
    }
    AttributionList out;
    out.answer_sentence_index = sentence_index;
    out.attributions.assign(best.begin(), best.end());
    sort_by_score_then_index(out.attributions);
    return out;
}

double lexical_entailment_proxy(const std::string& premise, const std::string& hypothesis) {
    std::set<std::string> hyp;
    for (auto& t : tokenize(hypothesis)) hyp.insert(std::move(t));
    if (hyp.empty()) return 0.0;
    std::set<std::string> prem;
    for (auto& t : tokenize(premise)) prem.insert(std::move(t));
    std::size_t overlap = 0;
    for (const auto& t : hyp) {
        if (prem.count(t)) ++overlap;
    }
    return static_cast<double>(overlap) / static_cast<double>(hyp.size());
}

void BudgetedScorer::charge(std::uint64_t n) {
    if (calls_ + n > budget_) {
        throw BudgetError("scorer call budget exceeded (" + std::to_string(budget_) +
                          " calls per record)");
    }
    calls_ += n;
}

double BudgetedScorer::score(const std::string& premise, const std::string& hypothesis) {
    charge(1);
    return inner_->score(premise, hypothesis);
}

std::vector<double> BudgetedScorer::score_batch(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    charge(pairs.size());
    return inner_->score_batch(pairs);
}

AttributionOutcome attribute_answer(const AnswerRecord& record, const SourceDocument& document,
                                    const PipelineComponents& pipeline) {
    if (pipeline.decomposer == nullptr || pipeline.scorer == nullptr) {
        throw ConfigError("attribute_answer: pipeline missing decomposer or scorer");
    }

    BudgetedScorer scorer(*pipeline.scorer, pipeline.scorer_call_budget);

    const SourceDocument* sources = &document;
    SourceDocument pruned;
    if (pipeline.prune.has_value()) {
        const std::string context =
            "record question_id=" + record.question_id + " answer_id=" + record.answer_id +
            " prune: ";
        try {
            pruned =
                prune_sources(document, record, pipeline.prune->ranker, pipeline.prune->limit);
        } catch (const RemoteError& e) {
            throw RemoteError(context + e.what());
        } catch (const ConfigError& e) {
            throw ConfigError(context + e.what());
        } catch (const Error& e) {
            throw DataError(context + e.what());
        }
        sources = &pruned;
    }

    AttributionOutcome outcome;
    outcome.lists.reserve(record.sentences.size());
    for (const auto& sentence : record.sentences) {
        const std::string context = "record question_id=" + record.question_id +
                                    " answer_id=" + record.answer_id + " sentence " +
                                    std::to_string(sentence.index) + ": ";
        try {
            auto units = decompose(sentence, *pipeline.decomposer);
            std::vector<UnitAttribution> selections;
            selections.reserve(units.size());
            for (const auto& unit : units) {
                selections.push_back(pipeline.selection == SelectionMode::optimal
                                         ? optimal_select(unit, *sources, scorer,
                                                          pipeline.selection_cfg)
                                         : ranked_select(unit, *sources, scorer,
                                                         pipeline.selection_cfg));
            }
            outcome.lists.push_back(merge_unit_attributions(selections, sentence.index));
        } catch (const RemoteError& e) {
            throw RemoteError(context + e.what());
        } catch (const BudgetError& e) {
            throw BudgetError(context + e.what());
        } catch (const ConfigError& e) {
            throw ConfigError(context + e.what());
        } catch (const Error& e) {
            throw DataError(context + e.what());
        }
    }
    outcome.scorer_calls = scorer.calls();
    return outcome;
}

}  // namespace adiosaa
