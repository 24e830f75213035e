// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <string>
#include <string_view>

namespace workbench
{
/// Lowercase hex with a 0x prefix.
std::string to_hex(bytes_view data);

template <size_t N>
std::string to_hex(const FixedBytes<N>& v)
{
    return to_hex(v.view());
}

/// Lowercase hex without prefix.
std::string to_hex_raw(bytes_view data);

/// Accepts an optional 0x/0X prefix and mixed-case digits. Odd length is
/// rejected. Throws Error{invalid_hex}.
bytes from_hex(std::string_view hex);

/// Parses hex that must decode to exactly N bytes.
template <size_t N>
FixedBytes<N> fixed_from_hex(std::string_view hex);

extern template FixedBytes<20> fixed_from_hex<20>(std::string_view);
extern template FixedBytes<32> fixed_from_hex<32>(std::string_view);

/// Ethereum JSON-RPC quantity: 0x-prefixed, no leading zeros, zero is "0x0".
std::string to_quantity(const uint256& n);
uint256 from_quantity(std::string_view q);

/// Big-endian bytes with no leading zero byte; zero encodes as empty.
bytes int_to_minimal_be(const uint256& n);

/// Inverse of int_to_minimal_be. Inputs longer than 32 bytes or carrying a
/// leading zero byte are rejected with Errc::non_canonical.
uint256 minimal_be_to_int(bytes_view data);

/// Big-endian fixed-width 32-byte image of n.
FixedBytes<32> to_be32(const uint256& n) noexcept;
uint256 from_be(bytes_view data) noexcept;
}  // namespace workbench
