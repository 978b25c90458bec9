#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "adiosaa/attributor.hpp"
#include "adiosaa/core.hpp"

namespace adiosaa::testing {

// Unique scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("adiosaa_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

inline SourceDocument make_document(const std::vector<std::string>& sentences,
                                    const std::string& question_id = "q") {
    SourceDocument doc;
    doc.question_id = question_id;
    int index = 0;
    for (const auto& s : sentences) doc.sentences.push_back({index++, s});
    return doc;
}

// Entailment scorer backed by an explicit premise -> score table.
class TableScorer final : public EntailmentScorer {
  public:
    explicit TableScorer(std::map<std::string, double> table, double fallback = 0.0)
        : table_(std::move(table)), fallback_(fallback) {}

    double score(const std::string& premise, const std::string&) override {
        ++calls_;
        auto it = table_.find(premise);
        return it == table_.end() ? fallback_ : it->second;
    }

    std::uint64_t calls() const { return calls_; }

  private:
    std::map<std::string, double> table_;
    double fallback_;
    std::uint64_t calls_ = 0;
};

class ConstantScorer final : public EntailmentScorer {
  public:
    explicit ConstantScorer(double value) : value_(value) {}
    double score(const std::string&, const std::string&) override { return value_; }

  private:
    double value_;
};

}  // namespace adiosaa::testing
