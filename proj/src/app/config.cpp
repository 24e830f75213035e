// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/app/config.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/util/fs.hpp>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace workbench::app
{
namespace
{
std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

uint64_t parse_uint(std::string_view key, std::string_view value, uint64_t max)
{
    uint64_t v = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size() || v > max)
        throw Error{Errc::invalid_argument, "config: '" + std::string{key} + "' must be an integer up to " +
                                                std::to_string(max)};
    return v;
}

void apply(Config& c, std::string_view key, std::string_view value)
{
    if (key == "bind")
        c.bind = std::string{value};
    else if (key == "port")
        c.port = static_cast<int>(parse_uint(key, value, 65535));
    else if (key == "data_dir")
        c.data_dir = std::string{value};
    else if (key == "poll_interval_ms")
        c.poll_interval = std::chrono::milliseconds{parse_uint(key, value, 3'600'000)};
    else if (key == "receipt_timeout_ms")
        c.receipt_timeout = std::chrono::milliseconds{parse_uint(key, value, 86'400'000)};
    else if (key == "log_level")
        c.log_level = std::string{value};
    else if (key == "cors_origin")
        c.cors_origin = std::string{value};
    else if (key == "password_iterations")
        c.password_iterations = static_cast<uint32_t>(parse_uint(key, value, 100'000'000));
    else if (key == "keystore_iterations")
        c.keystore_iterations = static_cast<uint32_t>(parse_uint(key, value, 100'000'000));
    else
        throw Error{Errc::invalid_argument, "config: unknown key '" + std::string{key} + "'"};
}
}  // namespace

Config Config::parse(std::string_view text)
{
    return parse(text, Config{});
}

Config Config::parse(std::string_view text, Config base)
{
    size_t line_no = 0;
    while (!text.empty())
    {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error{Errc::invalid_argument, "config line " + std::to_string(line_no) + ": expected key = value"};
        apply(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

std::optional<std::string> Config::process_env(const char* name)
{
    if (const char* v = std::getenv(name); v != nullptr)
        return std::string{v};
    return std::nullopt;
}

Config Config::load(const std::optional<std::filesystem::path>& file, const Env& env)
{
    Config c;
    if (file)
    {
        const auto text = util::read_file(*file);
        if (!text)
            throw Error{Errc::invalid_argument, "cannot read config file " + file->string()};
        c = parse(*text);
    }
    if (const auto v = env("WORKBENCH_BIND"))
        apply(c, "bind", *v);
    if (const auto v = env("WORKBENCH_PORT"))
        apply(c, "port", *v);
    if (const auto v = env("WORKBENCH_DATA_DIR"))
        apply(c, "data_dir", *v);
    c.validate();
    return c;
}

void Config::validate() const
{
    if (port < 1 || port > 65535)
        throw Error{Errc::invalid_argument, "config: port must be in [1, 65535]"};
    if (bind.empty())
        throw Error{Errc::invalid_argument, "config: bind address must not be empty"};
    if (data_dir.empty())
        throw Error{Errc::invalid_argument, "config: data_dir must not be empty"};
    if (poll_interval.count() == 0 || receipt_timeout.count() == 0)
        throw Error{Errc::invalid_argument, "config: poll interval and receipt timeout must be positive"};
    if (password_iterations == 0 || keystore_iterations == 0)
        throw Error{Errc::invalid_argument, "config: iteration counts must be positive"};
    static constexpr std::string_view levels[] = {"trace", "debug", "info", "warn", "error", "critical", "off"};
    if (std::ranges::find(levels, log_level) == std::end(levels))
        throw Error{Errc::invalid_argument, "config: unknown log_level '" + log_level + "'"};
}

std::string load_or_create_master_secret(const std::filesystem::path& data_dir, const Config::Env& env)
{
    if (const auto v = env("WORKBENCH_KEYSTORE_SECRET"); v && !v->empty())
        return *v;
    const auto path = data_dir / "master.key";
    if (const auto existing = util::read_file(path))
    {
        const auto s = std::string{trim(*existing)};
        if (s.empty())
            throw Error{Errc::storage_failure, path.string() + " is empty"};
        return s;
    }

    util::SystemRandom rng;
    const auto secret = to_hex_raw(rng.draw<32>().bytes);
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0600);
    if (fd < 0)
        throw Error{Errc::storage_failure, "cannot create " + path.string() + ": " + std::strerror(errno)};
    const auto line = secret + "\n";
    const bool ok = ::write(fd, line.data(), line.size()) == static_cast<ssize_t>(line.size()) && ::fsync(fd) == 0;
    ::close(fd);
    if (!ok)
        throw Error{Errc::storage_failure, "cannot write " + path.string()};
    return secret;
}

DataDirLock::DataDirLock(const std::filesystem::path& data_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(data_dir, ec);
    const auto path = data_dir / "lock";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
    if (fd_ < 0)
        throw Error{Errc::storage_failure, "cannot open " + path.string() + ": " + std::strerror(errno)};
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0)
    {
        ::close(fd_);
        throw Error{Errc::storage_failure, "data directory " + data_dir.string() + " is in use by another process"};
    }
}

DataDirLock::~DataDirLock()
{
    if (fd_ >= 0)
        ::close(fd_);
}

Workbench::Workbench(const Config& config, const Config::Env& env)
{
    std::error_code ec;
    std::filesystem::create_directories(config.data_dir, ec);
    if (ec)
        throw Error{Errc::storage_failure, "cannot create data directory " + config.data_dir.string()};
    registry::Options opts;
    opts.password_iterations = config.password_iterations;
    opts.keystore_iterations = config.keystore_iterations;
    registry_ = std::make_unique<registry::Registry>(config.data_dir / "registry.json",
        load_or_create_master_secret(config.data_dir, env), clock_, rng_, opts);
    service_ = std::make_unique<service::Service>(*registry_, service::default_backend_factory(config.data_dir), clock_);
    http::ApiOptions api_opts;
    api_opts.cors_origin = config.cors_origin;
    api_opts.poll_interval = config.poll_interval;
    api_opts.receipt_timeout = config.receipt_timeout;
    api_ = std::make_unique<http::Api>(*registry_, *service_, api_opts);
}
}  // namespace workbench::app
