// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

// REST client used by the command-line tool. Depends only on the HTTP
// transport and JSON; all service state is reached through /api/v1.
#pragma once

#include <nlohmann/json.hpp>
#include <chrono>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace workbench::cli
{
enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_auth = 2,
    exit_server = 3,
};

/// 2xx -> 0, 401/403 -> 2, other 4xx -> 1, anything else -> 3.
int exit_code_for_status(int status) noexcept;

struct Endpoint
{
    std::string url = "http://127.0.0.1:8080";
    std::string token;
    std::string api_key;
    std::chrono::seconds timeout{120};
};

struct Reply
{
    int status = 0;  ///< 0 when the server could not be reached
    nlohmann::json body;
};

Reply send(const Endpoint& ep, const std::string& method, const std::string& path,
    const std::optional<nlohmann::json>& body = std::nullopt);

struct Output
{
    std::ostream& out;
    std::ostream& err;
    bool json = false;
};

using Formatter = std::function<void(std::ostream&, const nlohmann::json&)>;

/// Prints the reply (compact JSON with --json, otherwise via `human`) and
/// returns the process exit code.
int report(const Output& o, const Reply& r, const Formatter& human = {});

/// Reads "@path" as a file and anything else as literal text.
std::string literal_or_file(const std::string& arg);

/// Parses a JSON argument given literally or as "@path".
nlohmann::json json_argument(const std::string& arg, const char* what);
}  // namespace workbench::cli
