// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/codec/hex.hpp>
#include <workbench/error.hpp>

namespace workbench
{
namespace
{
constexpr char digits[] = "0123456789abcdef";

int nibble(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

std::string_view strip_prefix(std::string_view hex) noexcept
{
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X'))
        hex.remove_prefix(2);
    return hex;
}
}  // namespace

std::string to_hex_raw(bytes_view data)
{
    std::string s;
    s.reserve(data.size() * 2);
    for (const auto b : data)
    {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

std::string to_hex(bytes_view data)
{
    return "0x" + to_hex_raw(data);
}

bytes from_hex(std::string_view hex)
{
    hex = strip_prefix(hex);
    if (hex.size() % 2 != 0)
        throw Error{Errc::invalid_hex, "hex string has odd length"};

    bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
    {
        const auto hi = nibble(hex[2 * i]);
        const auto lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw Error{Errc::invalid_hex, "invalid hex digit"};
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

template <size_t N>
FixedBytes<N> fixed_from_hex(std::string_view hex)
{
    const auto b = from_hex(hex);
    if (b.size() != N)
        throw Error{Errc::invalid_hex,
            "expected " + std::to_string(N) + " bytes, got " + std::to_string(b.size())};
    return FixedBytes<N>::from(b);
}

template FixedBytes<20> fixed_from_hex<20>(std::string_view);
template FixedBytes<32> fixed_from_hex<32>(std::string_view);

std::string to_quantity(const uint256& n)
{
    if (n == 0)
        return "0x0";
    auto s = to_hex_raw(int_to_minimal_be(n));
    if (s.front() == '0')
        s.erase(0, 1);
    return "0x" + s;
}

uint256 from_quantity(std::string_view q)
{
    if (q.size() < 3 || q[0] != '0' || (q[1] != 'x' && q[1] != 'X'))
        throw Error{Errc::invalid_hex, "quantity must be 0x-prefixed and non-empty"};
    q.remove_prefix(2);
    if (q.size() > 1 && q[0] == '0')
        throw Error{Errc::non_canonical, "quantity has leading zeros"};
    if (q.size() > 64)
        throw Error{Errc::invalid_hex, "quantity exceeds 256 bits"};
    uint256 r = 0;
    for (const char c : q)
    {
        const auto v = nibble(c);
        if (v < 0)
            throw Error{Errc::invalid_hex, "invalid hex digit in quantity"};
        r = (r << 4) | static_cast<unsigned>(v);
    }
    return r;
}

bytes int_to_minimal_be(const uint256& n)
{
    bytes out;
    boost::multiprecision::export_bits(n, std::back_inserter(out), 8);
    if (out.size() == 1 && out[0] == 0)
        out.clear();
    return out;
}

uint256 minimal_be_to_int(bytes_view data)
{
    if (data.size() > 32)
        throw Error{Errc::non_canonical, "integer longer than 32 bytes"};
    if (!data.empty() && data[0] == 0)
        throw Error{Errc::non_canonical, "integer has a leading zero byte"};
    return from_be(data);
}

FixedBytes<32> to_be32(const uint256& n) noexcept
{
    FixedBytes<32> r;
    auto v = n;
    for (size_t i = 32; i-- > 0;)
    {
        r.bytes[i] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return r;
}

uint256 from_be(bytes_view data) noexcept
{
    uint256 r = 0;
    for (const auto b : data)
        r = (r << 8) | b;
    return r;
}
}  // namespace workbench
