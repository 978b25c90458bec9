#include "adiosaa/core.hpp"

#include <boost/locale.hpp>

#include <cctype>
#include <chrono>
#include <ctime>
#include <sstream>

namespace adiosaa {

namespace {

bool ascii_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && ascii_space(s[b])) ++b;
    while (e > b && ascii_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

// Maximal run of non-whitespace characters ending at `pos` (inclusive),
// with leading non-alphanumerics stripped so "(e.g." still matches "e.g.".
std::string token_ending_at(const std::string& text, std::size_t pos) {
    std::size_t b = pos;
    while (b > 0 && !ascii_space(text[b - 1])) --b;
    while (b <= pos && !std::isalnum(static_cast<unsigned char>(text[b]))) ++b;
    if (b > pos) return {};
    return text.substr(b, pos - b + 1);
}

const std::locale& unicode_locale() {
    static const std::locale loc = boost::locale::generator{}("en_US.UTF-8");
    return loc;
}

}  // namespace

const std::vector<std::string>& segmenter_abbreviations() {
    static const std::vector<std::string> abbrevs = {
        "Dr.", "Mr.", "Mrs.", "Ms.", "St.", "vs.", "e.g.", "i.e.", "etc.",
    };
    return abbrevs;
}

std::vector<std::string> segment_sentences(const std::string& text) {
    std::vector<std::string> out;
    auto flush = [&out](const std::string& piece) {
        std::string t = trim(piece);
        if (!t.empty()) out.push_back(std::move(t));
    };

    const auto& abbrevs = segmenter_abbreviations();
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        if (i + 1 >= text.size() || !ascii_space(text[i + 1])) continue;
        std::size_t j = i + 1;
        while (j < text.size() && ascii_space(text[j])) ++j;
        if (j >= text.size()) break;
        unsigned char next = static_cast<unsigned char>(text[j]);
        if (!std::isupper(next) && !std::isdigit(next)) continue;
        if (c == '.') {
            std::string tok = token_ending_at(text, i);
            bool is_abbrev = false;
            for (const auto& a : abbrevs) {
                if (tok == a) {
                    is_abbrev = true;
                    break;
                }
            }
            if (is_abbrev) continue;
        }
        flush(text.substr(start, i + 1 - start));
        start = i + 1;
    }
    flush(text.substr(start));
    return out;
}

std::string normalize(const std::string& text) {
    const std::locale& loc = unicode_locale();
    std::string folded = boost::locale::fold_case(text, loc);
    std::string nfc = boost::locale::normalize(folded, boost::locale::norm_nfc, loc);

    std::string out;
    out.reserve(nfc.size());
    bool pending_space = false;
    for (char c : nfc) {
        if (ascii_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

bool is_extractive(const std::string& answer_sentence, const SourceDocument& document) {
    const std::string target = normalize(answer_sentence);
    for (const auto& s : document.sentences) {
        if (normalize(s.text) == target) return true;
    }
    return false;
}

void validate_document(const SourceDocument& document) {
    if (document.sentences.empty()) {
        throw DataError("document has no sentences (question_id=" + document.question_id + ")");
    }
    int expected = 0;
    for (const auto& s : document.sentences) {
        if (s.index != expected) {
            throw DataError("document indices not contiguous at position " +
                            std::to_string(expected) + " (question_id=" + document.question_id +
                            ")");
        }
        if (s.text.empty() || trim(s.text) != s.text) {
            throw DataError("document sentence " + std::to_string(s.index) +
                            " is empty or carries outer whitespace (question_id=" +
                            document.question_id + ")");
        }
        ++expected;
    }
}

void validate_answer(const AnswerRecord& record) {
    if (record.sentences.empty()) {
        throw DataError("answer has no sentences (answer_id=" + record.answer_id + ")");
    }
    int expected = 0;
    for (const auto& s : record.sentences) {
        if (s.index != expected) {
            throw DataError("answer indices not contiguous at position " +
                            std::to_string(expected) + " (answer_id=" + record.answer_id + ")");
        }
        if (s.text.empty() || trim(s.text) != s.text) {
            throw DataError("answer sentence " + std::to_string(s.index) +
                            " is empty or carries outer whitespace (answer_id=" +
                            record.answer_id + ")");
        }
        ++expected;
    }
}

std::string fnv1a64_hex(std::string_view s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace adiosaa
