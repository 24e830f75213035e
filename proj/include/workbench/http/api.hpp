// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/error.hpp>
#include <workbench/service/service.hpp>
#include <map>
#include <memory>
#include <thread>

namespace httplib
{
class Server;
}

namespace workbench::http
{
inline constexpr std::string_view base_path = "/api/v1";

struct Request
{
    std::string method;
    std::string path;
    std::map<std::string, std::string> headers;  ///< lower-case names
    std::string body;
};

struct Response
{
    int status = 200;
    nlohmann::json body;  ///< null means no body
    std::map<std::string, std::string> headers;
};

/// HTTP status for every error code; the error body is
/// {"error": {"code": to_string(code), "message": ...}}.
int http_status(Errc code) noexcept;
Response error_response(Errc code, std::string_view message);

struct ApiOptions
{
    std::string cors_origin = "*";
    /// Applied to networks registered without explicit values.
    std::chrono::milliseconds poll_interval{250};
    std::chrono::milliseconds receipt_timeout{30'000};
};

/// The /api/v1 surface, independent of the transport.
class Api
{
public:
    Api(registry::Registry& registry, service::Service& service, ApiOptions options = {});
    ~Api();

    Response handle(const Request& req) const;

    [[nodiscard]] const ApiOptions& options() const noexcept { return options_; }

    /// (method, path pattern) for every route, e.g. {"POST", "/apps/:id/keys"}.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> routes() const;

    struct Route;

private:
    Response dispatch(const Request& req) const;

    registry::Registry& registry_;
    service::Service& service_;
    ApiOptions options_;
    std::vector<Route> routes_;
};

/// Serves an Api over HTTP/1.1 with httplib. /healthz answers without auth.
class HttpServer
{
public:
    explicit HttpServer(const Api& api);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port.
    /// Throws Error{invalid_argument} when the address cannot be bound.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void run();
    /// run() on a background thread.
    void start();
    void stop();

    [[nodiscard]] int port() const noexcept { return port_; }

private:
    const Api& api_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = 0;
};
}  // namespace workbench::http
