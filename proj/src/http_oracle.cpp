// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "mobscore/oracle.hpp"

namespace mobscore {

namespace {

using nlohmann::json;

struct ParsedUrl {
    std::string host;
    int port = 80;
    std::string path = "/";
};

ParsedUrl parse_http_url(const std::string& url) {
    const std::string prefix = "http://";
    if (url.rfind(prefix, 0) != 0) {
        throw ValidationError("oracle URL must start with http:// (got '" + url + "')");
    }
    std::string rest = url.substr(prefix.size());
    ParsedUrl out;
    const auto slash = rest.find('/');
    std::string authority = rest.substr(0, slash);
    if (slash != std::string::npos) out.path = rest.substr(slash);
    const auto colon = authority.find(':');
    if (colon == std::string::npos) {
        out.host = authority;
    } else {
        out.host = authority.substr(0, colon);
        try {
            out.port = std::stoi(authority.substr(colon + 1));
        } catch (const std::exception&) {
            throw ValidationError("bad port in oracle URL '" + url + "'");
        }
    }
    if (out.host.empty()) throw ValidationError("missing host in oracle URL '" + url + "'");
    return out;
}

class HttpBackend final : public OracleBackend {
public:
    HttpBackend(const std::string& url, int d, double timeout_seconds)
        : url_(parse_http_url(url)), d_(d), client_(url_.host, url_.port) {
        if (d_ < 0 || d_ > FeatureSet::kMaxWidth) {
            throw ValidationError("http oracle dimension out of range");
        }
        const auto sec = static_cast<time_t>(timeout_seconds);
        const auto usec = static_cast<time_t>((timeout_seconds - static_cast<double>(sec)) * 1e6);
        client_.set_connection_timeout(sec, usec);
        client_.set_read_timeout(sec, usec);
        client_.set_write_timeout(sec, usec);
        client_.set_keep_alive(true);
        probe_connection();
    }

    int dimension() const override { return d_; }
    std::string kind() const override { return "http"; }

    double evaluate(const FeatureSet& keep) override {
        json request;
        request["keep"] = keep.indices();
        const std::string body = request.dump();

        std::string failure;
        for (int attempt = 0; attempt < kAttempts; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(kBackoffBase * (1 << (attempt - 1)));
            }
            auto res = client_.Post(url_.path, body, "application/json");
            if (!res) {
                failure = "transport error: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status != 200) {
                failure = "status " + std::to_string(res->status);
                continue;
            }
            return parse_reply(res->body);
        }
        throw OracleError("http oracle failed after " + std::to_string(kAttempts) +
                          " attempts: " + failure);
    }

private:
    static constexpr int kAttempts = 3;
    static constexpr std::chrono::milliseconds kBackoffBase{100};

    void probe_connection() {
        httplib::Client probe(url_.host, url_.port);
        probe.set_connection_timeout(5, 0);
        // Any HTTP response proves reachability; only transport-level
        // connection errors count as failures here.
        auto res = probe.Head(url_.path);
        if (!res && (res.error() == httplib::Error::Connection ||
                     res.error() == httplib::Error::ConnectionTimeout)) {
            throw OracleError("cannot connect to http oracle at " + url_.host + ":" +
                              std::to_string(url_.port));
        }
    }

    double parse_reply(const std::string& body) const {
        json reply;
        try {
            reply = json::parse(body);
        } catch (const json::parse_error&) {
            throw OracleError("protocol error: http oracle reply is not JSON: '" + body + "'");
        }
        if (!reply.is_object() || !reply.contains("value") || !reply["value"].is_number()) {
            throw OracleError("protocol error: http oracle reply must be {\"value\": number}");
        }
        return reply["value"].get<double>();
    }

    ParsedUrl url_;
    int d_;
    httplib::Client client_;
};

} // namespace

std::unique_ptr<OracleBackend> connect_http_oracle(const std::string& url, int d,
                                                   double timeout_seconds) {
    return std::make_unique<HttpBackend>(url, d, timeout_seconds);
}

} // namespace mobscore
