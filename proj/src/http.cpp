#include "adiosaa/http.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <thread>

namespace adiosaa {

namespace {

struct ParsedUrl {
    bool https = false;
    std::string host_port;  // "host:port" or "host"
    std::string path;       // at least "/"
};

ParsedUrl parse_url(const std::string& url) {
    ParsedUrl out;
    std::string rest;
    if (url.rfind("http://", 0) == 0) {
        rest = url.substr(7);
    } else if (url.rfind("https://", 0) == 0) {
        out.https = true;
        rest = url.substr(8);
    } else {
        throw ConfigError("endpoint must start with http:// or https://: " + url);
    }
    const std::size_t slash = rest.find('/');
    out.host_port = slash == std::string::npos ? rest : rest.substr(0, slash);
    out.path = slash == std::string::npos ? "/" : rest.substr(slash);
    if (out.host_port.empty()) throw ConfigError("endpoint has no host: " + url);
    return out;
}

}  // namespace

struct JsonHttpClient::Impl {
    std::unique_ptr<httplib::Client> client;
    std::string path;
    std::string bearer;
};

JsonHttpClient::JsonHttpClient(HttpConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
    ParsedUrl url = parse_url(config_.base_url);
    impl_->path = url.path;
    impl_->client = std::make_unique<httplib::Client>(
        (url.https ? "https://" : "http://") + url.host_port);
    const auto timeout =
        std::chrono::milliseconds(static_cast<long long>(config_.timeout_s * 1000.0));
    impl_->client->set_connection_timeout(timeout);
    impl_->client->set_read_timeout(timeout);
    impl_->client->set_write_timeout(timeout);
    if (!config_.api_key_env.empty()) {
        if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
            impl_->bearer = key;
        }
    }
}

JsonHttpClient::~JsonHttpClient() = default;
JsonHttpClient::JsonHttpClient(JsonHttpClient&&) noexcept = default;
JsonHttpClient& JsonHttpClient::operator=(JsonHttpClient&&) noexcept = default;

nlohmann::json JsonHttpClient::post_json(const nlohmann::json& body) {
    const std::string payload = body.dump();
    httplib::Headers headers;
    if (!impl_->bearer.empty()) {
        headers.emplace("Authorization", "Bearer " + impl_->bearer);
    }

    std::string last_error;
    const int attempts = config_.retries + 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            const auto delay = std::chrono::milliseconds(
                static_cast<long long>(config_.backoff_initial_ms) * (1LL << (attempt - 1)));
            std::this_thread::sleep_for(delay);
        }
        auto res = impl_->client->Post(impl_->path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server returned status " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw RemoteError(config_.base_url + ": unexpected status " +
                              std::to_string(res->status));
        }
        nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded()) {
            throw RemoteError(config_.base_url + ": response is not valid JSON");
        }
        return parsed;
    }
    throw RemoteError(config_.base_url + ": " + last_error + " after " +
                      std::to_string(attempts) + " attempts");
}

}  // namespace adiosaa
