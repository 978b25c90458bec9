#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adiosaa {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Error taxonomy; the CLI maps these onto its exit-code contract
// (1 usage/config, 2 data, 3 remote service).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct RemoteError : Error {
    using Error::Error;
};
// Thrown when the per-record scorer call budget is exhausted.
struct BudgetError : Error {
    using Error::Error;
};

// One sentence of the source document; `index` is its 0-based position.
struct SourceSentence {
    int index = 0;
    std::string text;

    bool operator==(const SourceSentence&) const = default;
};

struct SourceDocument {
    std::string question_id;
    std::vector<SourceSentence> sentences;

    bool operator==(const SourceDocument&) const = default;
};

// One sentence of an answer with its gold attribution indices
// (possibly empty: a sentence may have no supporting source sentence).
struct AnswerSentence {
    int index = 0;
    std::string text;
    std::set<int> gold_attributions;

    bool operator==(const AnswerSentence&) const = default;
};

struct AnswerRecord {
    std::string question_id;
    std::string question;
    std::string answer_id;
    std::vector<AnswerSentence> sentences;

    bool operator==(const AnswerRecord&) const = default;
};

// Rule-based sentence splitter. Splits after '.', '!' or '?' followed by
// whitespace and an ASCII uppercase letter or digit. A period preceded by
// one of the abbreviations below never ends a sentence.
std::vector<std::string> segment_sentences(const std::string& text);

// The fixed abbreviation exception list used by segment_sentences.
const std::vector<std::string>& segmenter_abbreviations();

// Casefold + unicode NFC + collapse whitespace runs to single spaces and
// strip outer whitespace.
std::string normalize(const std::string& text);

// True iff the answer sentence is a verbatim copy of some source sentence
// (compared after normalize on both sides).
bool is_extractive(const std::string& answer_sentence, const SourceDocument& document);

// Structural invariant checks; throw DataError on violation.
void validate_document(const SourceDocument& document);
void validate_answer(const AnswerRecord& record);

// Stable 64-bit FNV-1a, used for cache keys and run-manifest content hashes.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view s);

// Current UTC time as ISO 8601 (e.g. "2026-01-31T12:00:00Z").
std::string utc_timestamp();

}  // namespace adiosaa
