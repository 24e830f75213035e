// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/abi/abi.hpp>
#include <nlohmann/json.hpp>
#include <string_view>

namespace workbench::abi
{
/// Parses the compiler-emitted ABI array. Functions and the constructor are
/// kept; events, errors, fallback and receive entries are skipped.
/// Errors: malformed_json, unsupported_type, duplicate_signature.
Interface parse_abi_json(std::string_view text);

/// JSON shape of a value at the API boundary: integers as decimal strings
/// (hex "0x..." and JSON integers accepted on input), addresses and byte
/// strings as 0x-hex, booleans, text, arrays.
/// Throws Error{type_mismatch} or Error{value_out_of_range}.
Value value_from_json(const ParamType& type, const nlohmann::json& j);
nlohmann::json value_to_json(const ParamType& type, const Value& v);

std::vector<Value> values_from_json(std::span<const ParamType> types, const nlohmann::json& args);
nlohmann::json values_to_json(std::span<const ParamType> types, std::span<const Value> values);

/// {name, signature, selector, mutability, inputs, outputs}
nlohmann::json function_to_json(const Function& fn);
}  // namespace workbench::abi
