// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace workbench::util
{
/// Writes to a sibling temp file, fsyncs it and renames it over `path`, so a
/// reader sees either the old or the new contents, never a mix.
/// Throws Error{storage_failure}.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Whole-file read; nullopt if the file does not exist.
std::optional<std::string> read_file(const std::filesystem::path& path);
}  // namespace workbench::util
