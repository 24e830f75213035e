// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/http/api.hpp>
#include <httplib.h>
#include <spdlog/spdlog.h>
#include <algorithm>
#include <chrono>

namespace workbench::http
{
namespace
{
constexpr size_t max_body = 8 * 1024 * 1024;

std::string lower(std::string s)
{
    std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}
}  // namespace

HttpServer::HttpServer(const Api& api) : api_{api}, server_{std::make_unique<httplib::Server>()}
{
    server_->set_payload_max_length(max_body);
    server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"status":"ok"})", "application/json");
    });

    const auto handler = [this](const httplib::Request& hreq, httplib::Response& hres) {
        const auto start = std::chrono::steady_clock::now();
        Request req;
        req.method = hreq.method;
        req.path = hreq.path;
        req.body = hreq.body;
        for (const auto& [name, value] : hreq.headers)
            req.headers.emplace(lower(name), value);

        const auto res = api_.handle(req);
        hres.status = res.status;
        for (const auto& [name, value] : res.headers)
            hres.set_header(name, value);
        if (!res.body.is_null())
            hres.set_content(res.body.dump(), "application/json");

        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        spdlog::info("{} {} -> {} ({} ms)", req.method, req.path, res.status, ms.count());
    };
    const std::string pattern = std::string{base_path} + "(/.*)?";
    server_->Get(pattern, handler);
    server_->Post(pattern, handler);
    server_->Delete(pattern, handler);
    server_->Put(pattern, handler);
    server_->Patch(pattern, handler);
    server_->Options(pattern, handler);
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (port_ <= 0)
        throw Error{Errc::invalid_argument, "cannot bind " + host + ":" + std::to_string(port)};
    return port_;
}

void HttpServer::run()
{
    server_->listen_after_bind();
}

void HttpServer::start()
{
    thread_ = std::thread{[this] { run(); }};
    server_->wait_until_ready();
}

void HttpServer::stop()
{
    server_->stop();
    if (thread_.joinable())
        thread_.join();
}
}  // namespace workbench::http
