#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "adiosaa/core.hpp"

namespace adiosaa {

struct HttpConfig {
    std::string base_url;        // e.g. "http://127.0.0.1:8601/score"
    double timeout_s = 30.0;
    int retries = 2;             // additional attempts after the first
    int backoff_initial_ms = 250;  // doubled per retry
    std::size_t batch_size = 32;
    std::string api_key_env;     // env var NAME holding a bearer token
};

// POST JSON to a single endpoint with retry + exponential backoff on
// transport errors and 5xx responses. 4xx responses fail immediately.
class JsonHttpClient {
  public:
    explicit JsonHttpClient(HttpConfig config);
    ~JsonHttpClient();
    JsonHttpClient(JsonHttpClient&&) noexcept;
    JsonHttpClient& operator=(JsonHttpClient&&) noexcept;

    nlohmann::json post_json(const nlohmann::json& body);

    const HttpConfig& config() const { return config_; }

  private:
    struct Impl;
    HttpConfig config_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace adiosaa
