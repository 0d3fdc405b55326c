#include "discourse/http_backend.hpp"

#include <condition_variable>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "discourse/text_util.hpp"

namespace discourse {

namespace {

struct SplitUrl {
    std::string host; // scheme://host[:port]
    std::string path; // leading '/', possibly just "/"
};

SplitUrl split_url(const std::string& url) {
    const std::size_t scheme = url.find("://");
    const std::size_t path_start =
        url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

// bounded admission gate for in-flight requests
class Gate {
public:
    explicit Gate(int slots) : slots_(slots) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return slots_ > 0; });
        --slots_;
    }

    void release() {
        {
            std::lock_guard lock(mutex_);
            ++slots_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int slots_;
};

struct GateSlot {
    explicit GateSlot(Gate& gate) : gate_(gate) { gate_.acquire(); }
    ~GateSlot() { gate_.release(); }
    Gate& gate_;
};

} // namespace

struct OllamaBackend::Impl {
    Options options;
    SplitUrl url;
    Gate gate;

    explicit Impl(Options opts)
        : options(std::move(opts)),
          url(split_url(options.base_url)),
          gate(options.max_inflight > 0 ? options.max_inflight : 1) {}

    std::string request_once(const std::string& body) {
        httplib::Client client(url.host);
        client.set_connection_timeout(options.timeout_seconds, 0);
        client.set_read_timeout(options.timeout_seconds, 0);
        client.set_write_timeout(options.timeout_seconds, 0);

        std::string path = url.path;
        if (path.back() != '/') path += '/';
        path += "api/generate";

        auto res = client.Post(path, body, "application/json");
        if (!res) {
            throw BackendError("generate: transport error contacting " + options.base_url);
        }
        if (res->status != 200) {
            throw BackendError("generate: HTTP " + std::to_string(res->status) + " from " +
                               options.base_url);
        }
        try {
            const auto doc = nlohmann::json::parse(res->body);
            if (!doc.contains("response") || !doc["response"].is_string()) {
                throw BackendError("generate: reply missing \"response\" field");
            }
            return doc["response"].get<std::string>();
        } catch (const nlohmann::json::parse_error&) {
            throw BackendError("generate: reply is not valid JSON");
        }
    }
};

OllamaBackend::OllamaBackend(Options options) : impl_(std::make_unique<Impl>(std::move(options))) {}
OllamaBackend::~OllamaBackend() = default;

std::string OllamaBackend::generate(const std::string& prompt, double temperature) {
    nlohmann::json body = {
        {"model", impl_->options.model},
        {"prompt", prompt},
        {"stream", false},
        {"options", {{"temperature", temperature}}},
    };
    const std::string payload = body.dump();

    GateSlot slot(impl_->gate);
    try {
        return impl_->request_once(payload);
    } catch (const BackendError&) {
        // one retry, then give up and let the caller fall back
    }
    return impl_->request_once(payload);
}

struct HttpNewsClient::Impl {
    SplitUrl url;
    int timeout_seconds;
};

HttpNewsClient::HttpNewsClient(std::string base_url, int timeout_seconds)
    : impl_(std::make_unique<Impl>(Impl{split_url(base_url), timeout_seconds})) {}
HttpNewsClient::~HttpNewsClient() = default;

std::string HttpNewsClient::fetch(const std::string& query, std::size_t /*day_index*/) {
    try {
        httplib::Client client(impl_->url.host);
        client.set_connection_timeout(impl_->timeout_seconds, 0);
        client.set_read_timeout(impl_->timeout_seconds, 0);
        client.set_follow_location(true);

        const std::string path = impl_->url.path + "?q=" + percent_encode(query);
        auto res = client.Get(path);
        if (!res || res->status != 200) return kSearchUnavailable;
        return truncate_utf8(strip_html(res->body), kNewsSnippetBudget);
    } catch (const std::exception&) {
        return kSearchUnavailable;
    }
}

} // namespace discourse
