// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/error.hpp>
#include <workbench/util/fs.hpp>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace workbench::util
{
namespace
{
[[noreturn]] void fail(const std::string& what, const std::filesystem::path& p)
{
    throw Error{Errc::storage_failure, what + " " + p.string() + ": " + std::strerror(errno)};
}

void fsync_dir(const std::filesystem::path& dir)
{
    const auto fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd < 0)
        return;
    ::fsync(fd);
    ::close(fd);
}
}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    auto tmp = path;
    tmp += ".tmp";

    const auto fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (fd < 0)
        fail("cannot create", tmp);

    for (size_t written = 0; written < contents.size();)
    {
        const auto n = ::write(fd, contents.data() + written, contents.size() - written);
        if (n < 0)
        {
            if (errno == EINTR)
                continue;
            ::close(fd);
            fail("cannot write", tmp);
        }
        written += static_cast<size_t>(n);
    }
    if (::fsync(fd) != 0)
    {
        ::close(fd);
        fail("cannot fsync", tmp);
    }
    ::close(fd);

    if (::rename(tmp.c_str(), path.c_str()) != 0)
        fail("cannot rename onto", path);
    fsync_dir(path.parent_path());
}

std::optional<std::string> read_file(const std::filesystem::path& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}
}  // namespace workbench::util
