#include "adiosaa/decomposer.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>

namespace adiosaa {

namespace {

std::string strip_list_marker(const std::string& line) {
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i < n && (line[i] == '-' || line[i] == '*')) {
        ++i;
    } else {
        std::size_t j = i;
        while (j < n && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i && j < n && (line[j] == '.' || line[j] == ')')) i = j + 1;
    }
    while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t e = n;
    while (e > i && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    return line.substr(i, e - i);
}

}  // namespace

LlmDecomposer::LlmDecomposer(LlmClient& client, std::string model)
    : client_(&client), model_(std::move(model)) {}

std::vector<std::string> LlmDecomposer::parse_units(const std::string& response) {
    std::vector<std::string> units;
    std::size_t start = 0;
    while (start <= response.size()) {
        std::size_t end = response.find('\n', start);
        if (end == std::string::npos) end = response.size();
        std::string unit = strip_list_marker(response.substr(start, end - start));
        if (!unit.empty()) units.push_back(std::move(unit));
        start = end + 1;
    }
    return units;
}

std::vector<std::string> LlmDecomposer::decompose_text(const std::string& sentence) {
    std::string response = client_->complete(kDecomposePrompt + sentence);
    auto units = parse_units(response);
    if (units.empty()) units.push_back(sentence);
    return units;
}

DecompositionCache::DecompositionCache(std::filesystem::path path) : path_(std::move(path)) {
    if (!std::filesystem::exists(path_)) return;
    std::ifstream in(path_);
    if (!in) throw DataError("decomposition cache unreadable: " + path_.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw DataError("decomposition cache corrupt at " + path_.string() + ":" +
                            std::to_string(lineno));
        }
        DecompositionCacheEntry entry;
        try {
            entry.key = j.at("key").get<std::string>();
            entry.units = j.at("units").get<std::vector<std::string>>();
            entry.created_at = j.value("created_at", "");
            entry.template_version = j.value("template_version", "");
        } catch (const nlohmann::json::exception& e) {
            throw DataError("decomposition cache corrupt at " + path_.string() + ":" +
                            std::to_string(lineno) + ": " + e.what());
        }
        if (entry.units.empty()) {
            throw DataError("decomposition cache entry with no units at " + path_.string() + ":" +
                            std::to_string(lineno));
        }
        if (entry.template_version != kPromptTemplateVersion) continue;  // stale version
        entries_[entry.key] = std::move(entry);  // last write wins
    }
}

std::optional<DecompositionCacheEntry> DecompositionCache::lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void DecompositionCache::store(DecompositionCacheEntry entry) {
    if (entry.units.empty()) throw DataError("cache entry must have at least one unit");
    if (entry.created_at.empty()) entry.created_at = utc_timestamp();
    if (entry.template_version.empty()) entry.template_version = kPromptTemplateVersion;

    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw DataError("decomposition cache not writable: " + path_.string());
    nlohmann::ordered_json j;
    j["key"] = entry.key;
    j["units"] = entry.units;
    j["created_at"] = entry.created_at;
    j["template_version"] = entry.template_version;
    out << j.dump() << '\n';
    if (!out) throw DataError("decomposition cache write failed: " + path_.string());
    entries_[entry.key] = std::move(entry);
}

std::string DecompositionCache::make_key(const std::string& decomposer_id,
                                         const std::string& model_id,
                                         const std::string& template_version,
                                         const std::string& sentence) {
    std::string material;
    material.reserve(decomposer_id.size() + model_id.size() + template_version.size() +
                     sentence.size() + 3);
    material += decomposer_id;
    material += '\x1f';
    material += model_id;
    material += '\x1f';
    material += template_version;
    material += '\x1f';
    material += sentence;
    return fnv1a64_hex(material);
}

std::size_t DecompositionCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

CachingDecomposer::CachingDecomposer(Decomposer& backend, DecompositionCache& cache)
    : backend_(&backend), cache_(&cache) {}

std::vector<std::string> CachingDecomposer::decompose_text(const std::string& sentence) {
    const std::string key = DecompositionCache::make_key(backend_->id(), backend_->model_id(),
                                                         kPromptTemplateVersion, sentence);
    if (auto hit = cache_->lookup(key)) return hit->units;
    auto units = backend_->decompose_text(sentence);
    cache_->store({key, units, utc_timestamp(), kPromptTemplateVersion});
    return units;
}

std::vector<InformationUnit> decompose(const AnswerSentence& sentence, Decomposer& backend) {
    if (sentence.text.empty()) {
        throw DataError("decompose: empty answer sentence " + std::to_string(sentence.index));
    }
    std::vector<std::string> texts;
    try {
        texts = backend.decompose_text(sentence.text);
    } catch (const RemoteError& e) {
        throw RemoteError("decompose failed for sentence " + std::to_string(sentence.index) +
                          ": " + e.what());
    }
    if (texts.empty()) texts.push_back(sentence.text);

    std::vector<InformationUnit> units;
    units.reserve(texts.size());
    int unit_index = 0;
    for (auto& t : texts) {
        units.push_back({sentence.index, unit_index++, std::move(t)});
    }
    return units;
}

}  // namespace adiosaa
