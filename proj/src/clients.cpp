#include "adiosaa/clients.hpp"

#include <algorithm>

namespace adiosaa {

namespace {

// Split [0, total) into ranges of at most batch_size.
std::vector<std::pair<std::size_t, std::size_t>> batch_ranges(std::size_t total,
                                                              std::size_t batch_size) {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    const std::size_t step = std::max<std::size_t>(1, batch_size);
    for (std::size_t begin = 0; begin < total; begin += step) {
        ranges.emplace_back(begin, std::min(begin + step, total));
    }
    return ranges;
}

}  // namespace

std::vector<std::vector<double>> HttpEmbeddingScorer::embed(
    const std::vector<std::string>& texts) {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (auto [begin, end] : batch_ranges(texts.size(), client_.config().batch_size)) {
        nlohmann::json body;
        body["texts"] = std::vector<std::string>(texts.begin() + static_cast<long>(begin),
                                                 texts.begin() + static_cast<long>(end));
        nlohmann::json response = client_.post_json(body);
        if (!response.contains("embeddings") || !response["embeddings"].is_array()) {
            throw RemoteError(client_.config().base_url + ": response missing \"embeddings\"");
        }
        const auto& embeddings = response["embeddings"];
        if (embeddings.size() != end - begin) {
            throw RemoteError(client_.config().base_url + ": expected " +
                              std::to_string(end - begin) + " embeddings, got " +
                              std::to_string(embeddings.size()));
        }
        for (const auto& row : embeddings) {
            if (!row.is_array()) {
                throw RemoteError(client_.config().base_url + ": embedding row is not an array");
            }
            out.push_back(row.get<std::vector<double>>());
        }
    }
    // Fixed dimension per service.
    for (const auto& row : out) {
        if (row.size() != out.front().size()) {
            throw RemoteError(client_.config().base_url +
                              ": embeddings have inconsistent dimensions");
        }
    }
    return out;
}

std::vector<double> HttpRelevanceScorer::score(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (auto [begin, end] : batch_ranges(pairs.size(), client_.config().batch_size)) {
        nlohmann::json body;
        auto arr = nlohmann::json::array();
        for (std::size_t i = begin; i < end; ++i) {
            arr.push_back({{"query", pairs[i].first}, {"text", pairs[i].second}});
        }
        body["pairs"] = std::move(arr);
        nlohmann::json response = client_.post_json(body);
        if (!response.contains("scores") || !response["scores"].is_array() ||
            response["scores"].size() != end - begin) {
            throw RemoteError(client_.config().base_url +
                              ": response missing \"scores\" or wrong length");
        }
        for (const auto& s : response["scores"]) out.push_back(s.get<double>());
    }
    return out;
}

double HttpEntailmentScorer::score(const std::string& premise, const std::string& hypothesis) {
    return score_batch({{premise, hypothesis}}).front();
}

std::vector<double> HttpEntailmentScorer::score_batch(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (auto [begin, end] : batch_ranges(pairs.size(), client_.config().batch_size)) {
        nlohmann::json body;
        auto arr = nlohmann::json::array();
        for (std::size_t i = begin; i < end; ++i) {
            arr.push_back({{"premise", pairs[i].first}, {"hypothesis", pairs[i].second}});
        }
        body["pairs"] = std::move(arr);
        nlohmann::json response = client_.post_json(body);
        if (!response.contains("probabilities") || !response["probabilities"].is_array() ||
            response["probabilities"].size() != end - begin) {
            throw RemoteError(client_.config().base_url +
                              ": response missing \"probabilities\" or wrong length");
        }
        for (const auto& p : response["probabilities"]) out.push_back(p.get<double>());
    }
    return out;
}

std::string HttpLlmClient::complete(const std::string& prompt) {
    nlohmann::json body;
    body["model"] = model_;
    body["prompt"] = prompt;
    body["temperature"] = 0.0;
    nlohmann::json response = client_.post_json(body);
    if (!response.contains("text") || !response["text"].is_string()) {
        throw RemoteError(client_.config().base_url + ": response missing \"text\"");
    }
    return response["text"].get<std::string>();
}

}  // namespace adiosaa
