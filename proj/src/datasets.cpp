#include "adiosaa/datasets.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace adiosaa {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) {
            throw DataError(where + ": unknown field \"" + key + "\"");
        }
    }
}

std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Append sentences, merging any that normalize to an already-seen sentence.
// norm_to_index lets callers resolve gold text / citations afterwards.
void append_deduped(std::vector<SourceSentence>& out,
                    std::unordered_map<std::string, int>& norm_to_index,
                    const std::string& text) {
    std::string trimmed = trim_copy(text);
    if (trimmed.empty()) return;
    std::string norm = normalize(trimmed);
    if (norm.empty() || norm_to_index.count(norm)) return;
    int index = static_cast<int>(out.size());
    norm_to_index.emplace(std::move(norm), index);
    out.push_back({index, std::move(trimmed)});
}

std::vector<json> read_jsonl_objects(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<json> objects;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim_copy(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": malformed JSON line");
        }
        objects.push_back(std::move(j));
    }
    return objects;
}

const std::regex kCitationMarker(R"(\s*\[\s*\d+(?:\s*,\s*\d+)*\s*\])");

std::vector<int> extract_citation_ids(const std::string& sentence) {
    std::vector<int> ids;
    auto begin = std::sregex_iterator(sentence.begin(), sentence.end(), kCitationMarker);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::string marker = it->str();
        std::string digits;
        for (char c : marker) {
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits.push_back(c);
            } else if (!digits.empty()) {
                ids.push_back(std::stoi(digits));
                digits.clear();
            }
        }
        if (!digits.empty()) ids.push_back(std::stoi(digits));
    }
    return ids;
}

std::string strip_citation_markers(const std::string& sentence) {
    return trim_copy(std::regex_replace(sentence, kCitationMarker, ""));
}

}  // namespace

std::string to_string(Split split) {
    switch (split) {
        case Split::train: return "train";
        case Split::dev: return "dev";
        case Split::test: return "test";
    }
    throw DataError("unknown split value");
}

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::train;
    if (s == "dev") return Split::dev;
    if (s == "test") return Split::test;
    throw DataError("unknown split \"" + s + "\"");
}

void validate_record(const CanonicalRecord& record) {
    validate_document(record.document);
    validate_answer(record.answer);
    if (record.question_id.empty() || record.answer_id.empty()) {
        throw DataError("record missing question_id or answer_id");
    }
    std::unordered_set<std::string> norms;
    for (const auto& s : record.document.sentences) {
        if (!norms.insert(normalize(s.text)).second) {
            throw DataError("document sentences not unique after normalization (question_id=" +
                            record.question_id + ", sentence " + std::to_string(s.index) + ")");
        }
    }
    const int n = static_cast<int>(record.document.sentences.size());
    for (const auto& a : record.answer.sentences) {
        for (int g : a.gold_attributions) {
            if (g < 0 || g >= n) {
                throw DataError("gold attribution " + std::to_string(g) +
                                " out of range for answer sentence " + std::to_string(a.index) +
                                " (answer_id=" + record.answer_id + ")");
            }
        }
    }
}

ReformatResult reformat_verifiability(const std::filesystem::path& raw_dir) {
    const auto path = raw_dir / "annotations.jsonl";
    if (!std::filesystem::exists(path)) {
        throw DataError("missing raw file " + path.string());
    }

    ReformatResult result;
    for (const auto& j : read_jsonl_objects(path)) {
        std::string qid, aid;
        try {
            qid = j.at("question_id").get<std::string>();
            aid = j.at("answer_id").get<std::string>();
            const std::string question = j.at("question").get<std::string>();
            const Split split = split_from_string(j.at("split").get<std::string>());

            std::unordered_map<std::string, std::string> pages;
            for (const auto& p : j.at("pages")) {
                pages[p.at("page_id").get<std::string>()] = p.at("content").get<std::string>();
            }

            struct RawSentence {
                std::string text;
                std::vector<std::string> citations;
                std::vector<std::string> supporting;
            };
            std::vector<RawSentence> sentences;
            bool fully_supported = true;
            std::string drop_reason;
            for (const auto& s : j.at("answer_sentences")) {
                RawSentence raw;
                raw.text = trim_copy(s.at("text").get<std::string>());
                if (s.contains("citations")) {
                    raw.citations = s.at("citations").get<std::vector<std::string>>();
                }
                if (s.contains("supporting_sentences")) {
                    raw.supporting = s.at("supporting_sentences").get<std::vector<std::string>>();
                }
                if (!raw.citations.empty()) {
                    const std::string support = s.value("support", "");
                    if (support != "full") {
                        fully_supported = false;
                        drop_reason = "answer sentence " + std::to_string(sentences.size()) +
                                      " support judgment \"" + support + "\" is not \"full\"";
                    }
                }
                sentences.push_back(std::move(raw));
            }
            if (!fully_supported) {
                result.drops.push_back({qid, aid, drop_reason});
                continue;
            }

            // Pseudo-document: cited pages in first-citation order, deduplicated.
            std::vector<std::string> page_order;
            std::unordered_set<std::string> seen_pages;
            bool missing_page = false;
            for (const auto& s : sentences) {
                for (const auto& cite : s.citations) {
                    if (!pages.count(cite)) {
                        result.drops.push_back({qid, aid, "citation to unknown page \"" + cite +
                                                              "\""});
                        missing_page = true;
                        break;
                    }
                    if (seen_pages.insert(cite).second) page_order.push_back(cite);
                }
                if (missing_page) break;
            }
            if (missing_page) continue;

            CanonicalRecord record;
            record.question_id = qid;
            record.answer_id = aid;
            record.question = question;
            record.split = split;
            record.document.question_id = qid;

            std::unordered_map<std::string, int> norm_to_index;
            for (const auto& page_id : page_order) {
                for (const auto& sent : segment_sentences(pages[page_id])) {
                    append_deduped(record.document.sentences, norm_to_index, sent);
                }
            }
            if (record.document.sentences.empty()) {
                result.drops.push_back({qid, aid, "empty pseudo-document (no cited content)"});
                continue;
            }

            bool dangling_gold = false;
            int index = 0;
            for (const auto& s : sentences) {
                if (s.text.empty()) continue;
                AnswerSentence out;
                out.index = index;
                out.text = s.text;
                for (const auto& gold : s.supporting) {
                    auto it = norm_to_index.find(normalize(gold));
                    if (it == norm_to_index.end()) {
                        result.drops.push_back(
                            {qid, aid, "gold sentence not found in pseudo-document: \"" + gold +
                                           "\""});
                        dangling_gold = true;
                        break;
                    }
                    out.gold_attributions.insert(it->second);
                }
                if (dangling_gold) break;
                record.answer.sentences.push_back(std::move(out));
                ++index;
            }
            if (dangling_gold) continue;
            if (record.answer.sentences.empty()) {
                result.drops.push_back({qid, aid, "answer has no non-empty sentences"});
                continue;
            }

            record.answer.question_id = qid;
            record.answer.question = question;
            record.answer.answer_id = aid;
            validate_record(record);
            result.records.push_back(std::move(record));
        } catch (const json::exception& e) {
            result.drops.push_back({qid, aid, std::string("malformed annotation: ") + e.what()});
        } catch (const DataError& e) {
            result.drops.push_back({qid, aid, std::string("invalid record: ") + e.what()});
        }
    }
    return result;
}

ReformatResult reformat_hagrid(const std::filesystem::path& raw_dir) {
    const auto path = raw_dir / "hagrid.jsonl";
    if (!std::filesystem::exists(path)) {
        throw DataError("missing raw file " + path.string());
    }

    ReformatResult result;
    for (const auto& j : read_jsonl_objects(path)) {
        std::string qid;
        try {
            qid = j.at("question_id").get<std::string>();
            const std::string question = j.at("question").get<std::string>();
            const std::string split_name = j.at("split").get<std::string>();
            if (split_name != "train" && split_name != "dev") {
                result.drops.push_back({qid, "", "split \"" + split_name +
                                                     "\" not emitted (train/dev only)"});
                continue;
            }
            const Split split = split_from_string(split_name);

            SourceDocument document;
            document.question_id = qid;
            std::unordered_map<std::string, int> norm_to_index;
            std::unordered_map<int, int> passage_id_to_index;
            for (const auto& p : j.at("passages")) {
                const int pid = p.at("id").get<int>();
                const std::string text = trim_copy(p.at("text").get<std::string>());
                if (text.empty()) continue;
                const std::string norm = normalize(text);
                auto it = norm_to_index.find(norm);
                if (it != norm_to_index.end()) {
                    passage_id_to_index[pid] = it->second;  // duplicate passage, merged
                    continue;
                }
                const int index = static_cast<int>(document.sentences.size());
                norm_to_index.emplace(norm, index);
                passage_id_to_index[pid] = index;
                document.sentences.push_back({index, text});
            }

            for (const auto& a : j.at("answers")) {
                const std::string aid = a.at("answer_id").get<std::string>();
                const std::string answer_text = a.at("text").get<std::string>();

                if (document.sentences.empty()) {
                    result.drops.push_back({qid, aid, "no labeled passages"});
                    continue;
                }

                CanonicalRecord record;
                record.question_id = qid;
                record.answer_id = aid;
                record.question = question;
                record.split = split;
                record.document = document;
                record.answer.question_id = qid;
                record.answer.question = question;
                record.answer.answer_id = aid;

                bool bad_citation = false;
                int index = 0;
                for (const auto& sentence : segment_sentences(answer_text)) {
                    AnswerSentence out;
                    out.text = strip_citation_markers(sentence);
                    if (out.text.empty()) continue;  // marker-only fragment
                    out.index = index;
                    for (int pid : extract_citation_ids(sentence)) {
                        auto it = passage_id_to_index.find(pid);
                        if (it == passage_id_to_index.end()) {
                            result.drops.push_back({qid, aid, "citation [" + std::to_string(pid) +
                                                                  "] has no matching passage"});
                            bad_citation = true;
                            break;
                        }
                        out.gold_attributions.insert(it->second);
                    }
                    if (bad_citation) break;
                    record.answer.sentences.push_back(std::move(out));
                    ++index;
                }
                if (bad_citation) continue;
                if (record.answer.sentences.empty()) {
                    result.drops.push_back({qid, aid, "answer has no non-empty sentences"});
                    continue;
                }
                validate_record(record);
                result.records.push_back(std::move(record));
            }
        } catch (const json::exception& e) {
            result.drops.push_back({qid, "", std::string("malformed annotation: ") + e.what()});
        } catch (const DataError& e) {
            result.drops.push_back({qid, "", std::string("invalid record: ") + e.what()});
        }
    }
    return result;
}

DatasetStats compute_stats(const std::vector<CanonicalRecord>& records) {
    DatasetStats stats;
    stats.size = records.size();
    if (records.empty()) return stats;

    double source_sum = 0.0;
    double answer_len_sum = 0.0;
    std::uint64_t attributed_sentences = 0;
    std::uint64_t attribution_sum = 0;
    std::set<std::string> questions;
    for (const auto& r : records) {
        source_sum += static_cast<double>(r.document.sentences.size());
        answer_len_sum += static_cast<double>(r.answer.sentences.size());
        questions.insert(r.question_id);
        for (const auto& s : r.answer.sentences) {
            if (!s.gold_attributions.empty()) {
                ++attributed_sentences;
                attribution_sum += s.gold_attributions.size();
            }
        }
    }
    const double n = static_cast<double>(records.size());
    stats.avg_source_sentences = source_sum / n;
    stats.avg_sentences_per_answer = answer_len_sum / n;
    stats.avg_answers_per_question = n / static_cast<double>(questions.size());
    stats.avg_attributions_per_sentence =
        attributed_sentences == 0
            ? 0.0
            : static_cast<double>(attribution_sum) / static_cast<double>(attributed_sentences);
    return stats;
}

double avg_attributions_all_sentences(const std::vector<CanonicalRecord>& records) {
    std::uint64_t sentences = 0;
    std::uint64_t attributions = 0;
    for (const auto& r : records) {
        for (const auto& s : r.answer.sentences) {
            ++sentences;
            attributions += s.gold_attributions.size();
        }
    }
    return sentences == 0 ? 0.0
                          : static_cast<double>(attributions) / static_cast<double>(sentences);
}

std::vector<CanonicalRecord> read_canonical(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::vector<CanonicalRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim_copy(line).empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw DataError(where + ": malformed JSON line");
        }
        try {
            reject_unknown_fields(
                j, {"question_id", "answer_id", "question", "split", "document", "answer"}, where);
            CanonicalRecord record;
            record.question_id = j.at("question_id").get<std::string>();
            record.answer_id = j.at("answer_id").get<std::string>();
            record.question = j.at("question").get<std::string>();
            record.split = split_from_string(j.at("split").get<std::string>());

            reject_unknown_fields(j.at("document"), {"sentences"}, where + " document");
            record.document.question_id = record.question_id;
            for (const auto& s : j.at("document").at("sentences")) {
                reject_unknown_fields(s, {"index", "text"}, where + " document sentence");
                record.document.sentences.push_back(
                    {s.at("index").get<int>(), s.at("text").get<std::string>()});
            }

            reject_unknown_fields(j.at("answer"), {"sentences"}, where + " answer");
            record.answer.question_id = record.question_id;
            record.answer.question = record.question;
            record.answer.answer_id = record.answer_id;
            for (const auto& s : j.at("answer").at("sentences")) {
                reject_unknown_fields(s, {"index", "text", "gold_attributions"},
                                      where + " answer sentence");
                AnswerSentence sentence;
                sentence.index = s.at("index").get<int>();
                sentence.text = s.at("text").get<std::string>();
                for (int g : s.at("gold_attributions")) sentence.gold_attributions.insert(g);
                record.answer.sentences.push_back(std::move(sentence));
            }
            validate_record(record);
            records.push_back(std::move(record));
        } catch (const json::exception& e) {
            throw DataError(where + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError(where + ": " + e.what());
        }
    }
    return records;
}

void write_canonical(const std::vector<CanonicalRecord>& records,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    for (const auto& r : records) {
        validate_record(r);
        ordered_json j;
        j["question_id"] = r.question_id;
        j["answer_id"] = r.answer_id;
        j["question"] = r.question;
        j["split"] = to_string(r.split);
        ordered_json doc_sentences = ordered_json::array();
        for (const auto& s : r.document.sentences) {
            doc_sentences.push_back({{"index", s.index}, {"text", s.text}});
        }
        j["document"] = {{"sentences", std::move(doc_sentences)}};
        ordered_json answer_sentences = ordered_json::array();
        for (const auto& s : r.answer.sentences) {
            answer_sentences.push_back(
                {{"index", s.index},
                 {"text", s.text},
                 {"gold_attributions",
                  std::vector<int>(s.gold_attributions.begin(), s.gold_attributions.end())}});
        }
        j["answer"] = {{"sentences", std::move(answer_sentences)}};
        out << j.dump() << '\n';
    }
    if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace adiosaa
