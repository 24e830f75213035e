// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include "client.hpp"
#include <httplib.h>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace workbench::cli
{
int exit_code_for_status(int status) noexcept
{
    if (status >= 200 && status < 300)
        return exit_ok;
    if (status == 401 || status == 403)
        return exit_auth;
    if (status >= 400 && status < 500)
        return exit_usage;
    return exit_server;
}

Reply send(const Endpoint& ep, const std::string& method, const std::string& path,
    const std::optional<nlohmann::json>& body)
{
    // Split "scheme://host:port/prefix" so a reverse-proxy prefix is honoured.
    std::string origin = ep.url;
    std::string prefix;
    if (const auto scheme = ep.url.find("://"); scheme != std::string::npos)
    {
        if (const auto slash = ep.url.find('/', scheme + 3); slash != std::string::npos)
        {
            origin = ep.url.substr(0, slash);
            prefix = ep.url.substr(slash);
            while (!prefix.empty() && prefix.back() == '/')
                prefix.pop_back();
        }
    }

    httplib::Client client{origin};
    client.set_connection_timeout(std::chrono::seconds{10});
    client.set_read_timeout(ep.timeout);
    client.set_write_timeout(ep.timeout);

    httplib::Headers headers{{"Accept", "application/json"}};
    if (!ep.token.empty())
        headers.emplace("Authorization", "Bearer " + ep.token);
    if (!ep.api_key.empty())
        headers.emplace("X-API-Key", ep.api_key);

    httplib::Request req;
    req.method = method;
    req.path = prefix + "/api/v1" + path;
    req.headers = std::move(headers);
    if (body)
    {
        req.body = body->dump();
        req.set_header("Content-Type", "application/json");
    }

    const auto res = client.send(req);
    if (!res)
        return {0, {{"error", {{"code", "unreachable"},
                                  {"message", "cannot reach " + ep.url + ": " + httplib::to_string(res.error())}}}}};
    Reply r{res->status, nullptr};
    if (!res->body.empty())
    {
        r.body = nlohmann::json::parse(res->body, nullptr, false);
        if (r.body.is_discarded())
            r.body = {{"error", {{"code", "protocol_error"}, {"message", "response is not JSON"}}}};
    }
    return r;
}

int report(const Output& o, const Reply& r, const Formatter& human)
{
    const int code = exit_code_for_status(r.status);
    if (o.json)
        o.out << r.body.dump() << '\n';
    if (code != exit_ok)
    {
        const auto& e = r.body.contains("error") ? r.body["error"] : r.body;
        o.err << "error: " << e.value("code", "unknown") << ": " << e.value("message", "") << '\n';
    }
    else if (!o.json)
    {
        if (human)
            human(o.out, r.body);
        else
            o.out << r.body.dump(2) << '\n';
    }
    return code;
}

std::string literal_or_file(const std::string& arg)
{
    if (!arg.starts_with('@'))
        return arg;
    std::ifstream in{arg.substr(1), std::ios::binary};
    if (!in)
        throw std::invalid_argument{"cannot read " + arg.substr(1)};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json json_argument(const std::string& arg, const char* what)
{
    auto j = nlohmann::json::parse(literal_or_file(arg), nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument{std::string{what} + " is not valid JSON"};
    return j;
}
}  // namespace workbench::cli
