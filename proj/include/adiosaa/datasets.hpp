#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "adiosaa/core.hpp"

namespace adiosaa {

enum class Split { train, dev, test };

std::string to_string(Split split);
Split split_from_string(const std::string& s);

// One (question, answer) pair with its document and gold attributions.
// Document sentences are unique after normalize(); every gold index
// resolves to a document sentence.
struct CanonicalRecord {
    std::string question_id;
    std::string answer_id;
    std::string question;
    SourceDocument document;
    AnswerRecord answer;
    Split split = Split::train;

    bool operator==(const CanonicalRecord&) const = default;
};

struct DatasetStats {
    std::uint64_t size = 0;
    double avg_source_sentences = 0.0;
    // Mean gold-set size over answer sentences that have >= 1 attribution.
    double avg_attributions_per_sentence = 0.0;
    double avg_sentences_per_answer = 0.0;
    double avg_answers_per_question = 0.0;
};

struct DropEntry {
    std::string question_id;
    std::string answer_id;
    std::string reason;
};

struct ReformatResult {
    std::vector<CanonicalRecord> records;
    std::vector<DropEntry> drops;
};

// Throws DataError when any CanonicalRecord invariant is violated.
void validate_record(const CanonicalRecord& record);

// Verifiability reformulation. Expects raw_dir/annotations.jsonl with one
// object per (question, answer) pair:
//   {"question_id", "question", "answer_id", "split",
//    "pages": [{"page_id", "content"}, ...],
//    "answer_sentences": [{"text", "citations": [page_id, ...],
//                          "support": "full"|"partial"|"none",
//                          "supporting_sentences": [str, ...]}, ...]}
// Answers with any cited sentence not judged "full" are dropped. The
// pseudo-document concatenates cited page contents in first-citation order,
// sentence-segmented and deduplicated; gold sentences are aligned by
// normalized exact match, and any miss drops the whole record.
ReformatResult reformat_verifiability(const std::filesystem::path& raw_dir);

// Hagrid reformulation. Expects raw_dir/hagrid.jsonl with one object per
// question:
//   {"question_id", "question", "split": "train"|"dev",
//    "passages": [{"id": int, "text": str}, ...],
//    "answers": [{"answer_id", "text"}, ...]}
// Each labeled passage becomes one source sentence; inline citation markers
// like "[1]" or "[1, 2]" in answer sentences become gold indices and are
// stripped from the text. Citations to unlisted passages drop the record.
ReformatResult reformat_hagrid(const std::filesystem::path& raw_dir);

DatasetStats compute_stats(const std::vector<CanonicalRecord>& records);

// The alternate Table-2 denominator: mean gold-set size over ALL answer
// sentences, attributed or not.
double avg_attributions_all_sentences(const std::vector<CanonicalRecord>& records);

// Canonical JSONL round-trip. One record per line, UTF-8, exactly the
// documented fields; unknown fields and malformed lines are errors naming
// the line number.
std::vector<CanonicalRecord> read_canonical(const std::filesystem::path& path);
void write_canonical(const std::vector<CanonicalRecord>& records,
                     const std::filesystem::path& path);

}  // namespace adiosaa
