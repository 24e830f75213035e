// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace workbench
{
using bytes = std::vector<uint8_t>;
using bytes_view = std::span<const uint8_t>;

using uint256 = boost::multiprecision::uint256_t;
using uint512 = boost::multiprecision::uint512_t;

/// A byte array of fixed length N. Used for digests, addresses and key material.
template <size_t N>
struct FixedBytes
{
    static constexpr size_t size = N;

    std::array<uint8_t, N> bytes{};

    /// Copies exactly N bytes; callers check the length first.
    static FixedBytes from(bytes_view v) noexcept
    {
        FixedBytes r;
        std::copy_n(v.begin(), std::min(N, v.size()), r.bytes.begin());
        return r;
    }

    [[nodiscard]] bytes_view view() const noexcept { return {bytes.data(), N}; }
    [[nodiscard]] std::vector<uint8_t> to_bytes() const { return {bytes.begin(), bytes.end()}; }
    [[nodiscard]] bool is_zero() const noexcept
    {
        return std::all_of(bytes.begin(), bytes.end(), [](uint8_t b) { return b == 0; });
    }

    friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

using Digest32 = FixedBytes<32>;
using Address = FixedBytes<20>;

inline void append(bytes& out, bytes_view v)
{
    out.insert(out.end(), v.begin(), v.end());
}

inline bytes concat(bytes_view a, bytes_view b)
{
    bytes r;
    r.reserve(a.size() + b.size());
    append(r, a);
    append(r, b);
    return r;
}
}  // namespace workbench
