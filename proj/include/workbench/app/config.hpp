// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/http/api.hpp>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace workbench::app
{
/// Server configuration from a flat "key = value" file (# starts a comment),
/// with WORKBENCH_BIND, WORKBENCH_PORT and WORKBENCH_DATA_DIR overriding it.
struct Config
{
    std::string bind = "127.0.0.1";
    int port = 8080;
    std::filesystem::path data_dir = "workbench-data";
    std::chrono::milliseconds poll_interval{250};
    std::chrono::milliseconds receipt_timeout{30'000};
    std::string log_level = "info";
    std::string cors_origin = "*";
    uint32_t password_iterations = wallet::default_kdf_iterations;
    uint32_t keystore_iterations = wallet::default_kdf_iterations;

    /// Errors: invalid_argument (unknown key, bad value, missing '=').
    static Config parse(std::string_view text);
    static Config parse(std::string_view text, Config base);

    using Env = std::function<std::optional<std::string>(const char*)>;
    static std::optional<std::string> process_env(const char* name);

    /// Defaults, then the file (if given), then the environment.
    static Config load(const std::optional<std::filesystem::path>& file, const Env& env = process_env);

    void validate() const;
};

/// WORKBENCH_KEYSTORE_SECRET if set, otherwise data_dir/master.key, created
/// with owner-only permissions on first use.
std::string load_or_create_master_secret(const std::filesystem::path& data_dir, const Config::Env& env);

/// Exclusive advisory lock on data_dir/lock, held by a running server so
/// that offline commands cannot write behind it. Throws
/// Error{storage_failure} when another process holds the lock.
class DataDirLock
{
public:
    explicit DataDirLock(const std::filesystem::path& data_dir);
    ~DataDirLock();
    DataDirLock(const DataDirLock&) = delete;
    DataDirLock& operator=(const DataDirLock&) = delete;

private:
    int fd_ = -1;
};

/// Registry, service and API assembled from a configuration. The data
/// directory is created if absent. Throws Error{corrupt_snapshot} rather
/// than starting from a damaged snapshot.
class Workbench
{
public:
    explicit Workbench(const Config& config, const Config::Env& env = Config::process_env);

    registry::Registry& registry() { return *registry_; }
    service::Service& service() { return *service_; }
    http::Api& api() { return *api_; }

private:
    util::SystemClock clock_;
    util::SystemRandom rng_;
    std::unique_ptr<registry::Registry> registry_;
    std::unique_ptr<service::Service> service_;
    std::unique_ptr<http::Api> api_;
};
}  // namespace workbench::app
