#pragma once

#include <memory>
#include <string>

#include "discourse/generation.hpp"

namespace discourse {

// Client for an Ollama-compatible generate endpoint:
// POST {base_url}/api/generate
// {"model": ..., "prompt": ..., "stream": false, "options": {"temperature": ...}}
// The completion is the response body's "response" field. A failed request
// is retried once, then generate() throws BackendError.
class OllamaBackend : public GenerationBackend {
public:
    struct Options {
        std::string base_url = "http://localhost:11434";
        std::string model = "mistral:7b-instruct-q4_0";
        int timeout_seconds = 60;
        int max_inflight = 4; // concurrent requests admitted to the server
    };

    explicit OllamaBackend(Options options);
    ~OllamaBackend() override;

    std::string generate(const std::string& prompt, double temperature) override;
    BackendKind kind() const override { return BackendKind::remote; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// GET {base_url}?q={query}; strips markup from the body and truncates to the
// snippet budget. Any failure yields kSearchUnavailable.
class HttpNewsClient : public NewsClient {
public:
    HttpNewsClient(std::string base_url, int timeout_seconds = 10);
    ~HttpNewsClient() override;

    std::string fetch(const std::string& query, std::size_t day_index) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace discourse
