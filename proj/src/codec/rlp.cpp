// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/codec/hex.hpp>
#include <workbench/codec/rlp.hpp>
#include <workbench/error.hpp>

namespace workbench::rlp
{
namespace
{
constexpr uint8_t short_string = 0x80;
constexpr uint8_t long_string = 0xb7;
constexpr uint8_t short_list = 0xc0;
constexpr uint8_t long_list = 0xf7;
constexpr size_t short_cutoff = 55;

void encode_length(bytes& out, size_t len, uint8_t short_base, uint8_t long_base)
{
    if (len > max_payload)
        throw Error{Errc::payload_too_large,
            "rlp payload of " + std::to_string(len) + " bytes exceeds the limit"};
    if (len <= short_cutoff)
    {
        out.push_back(static_cast<uint8_t>(short_base + len));
        return;
    }
    const auto len_bytes = int_to_minimal_be(len);
    out.push_back(static_cast<uint8_t>(long_base + len_bytes.size()));
    append(out, len_bytes);
}

void encode_into(bytes& out, const Item& item)
{
    if (!item.is_list())
    {
        const auto& s = item.str();
        if (s.size() == 1 && s[0] < short_string)
            out.push_back(s[0]);
        else
        {
            encode_length(out, s.size(), short_string, long_string);
            append(out, s);
        }
        return;
    }

    bytes payload;
    for (const auto& child : item.list())
        encode_into(payload, child);
    encode_length(out, payload.size(), short_list, long_list);
    append(out, payload);
}

struct Header
{
    bool is_list;
    size_t header_len;
    size_t payload_len;
};

Header decode_header(bytes_view in)
{
    if (in.empty())
        throw Error{Errc::truncated_input, "rlp: input ended before an item header"};

    const auto prefix = in[0];
    if (prefix < short_string)
        return {false, 0, 1};

    const bool is_list = prefix >= short_list;
    const uint8_t base = is_list ? short_list : short_string;
    const uint8_t long_base = is_list ? long_list : long_string;

    if (prefix <= long_base)
    {
        const size_t len = prefix - base;
        if (1 + len > in.size())
            throw Error{Errc::truncated_input, "rlp: payload shorter than declared"};
        if (!is_list && len == 1 && in[1] < short_string)
            throw Error{Errc::non_canonical, "rlp: single byte below 0x80 must encode as itself"};
        return {is_list, 1, len};
    }

    const size_t len_of_len = prefix - long_base;
    if (1 + len_of_len > in.size())
        throw Error{Errc::truncated_input, "rlp: length-of-length runs past input"};
    if (in[1] == 0)
        throw Error{Errc::non_canonical, "rlp: length has a leading zero byte"};

    uint64_t len = 0;
    for (size_t i = 0; i < len_of_len; ++i)
    {
        if (len > (max_payload >> 8))
            throw Error{Errc::payload_too_large, "rlp: declared payload exceeds the limit"};
        len = (len << 8) | in[1 + i];
    }
    if (len > max_payload)
        throw Error{Errc::payload_too_large, "rlp: declared payload exceeds the limit"};
    if (len <= short_cutoff)
        throw Error{Errc::non_canonical, "rlp: long form used for a short payload"};
    if (1 + len_of_len + len > in.size())
        throw Error{Errc::truncated_input, "rlp: payload shorter than declared"};
    return {is_list, 1 + len_of_len, static_cast<size_t>(len)};
}

Item decode_item(bytes_view in, size_t& consumed, size_t depth)
{
    const auto h = decode_header(in);
    const auto payload = in.subspan(h.header_len, h.payload_len);
    consumed = h.header_len + h.payload_len;

    if (!h.is_list)
        return Item::string(payload);

    if (depth >= max_depth)
        throw Error{Errc::payload_too_large, "rlp: list nesting too deep"};

    Item::List items;
    for (size_t pos = 0; pos < payload.size();)
    {
        size_t n = 0;
        items.push_back(decode_item(payload.subspan(pos), n, depth + 1));
        pos += n;
    }
    return Item{std::move(items)};
}
}  // namespace

Item Item::uint(const uint256& n)
{
    return Item{int_to_minimal_be(n)};
}

const bytes& Item::str() const
{
    if (const auto* s = std::get_if<bytes>(&value_))
        return *s;
    throw Error{Errc::malformed_rlp, "rlp: expected a byte string, found a list"};
}

const Item::List& Item::list() const
{
    if (const auto* l = std::get_if<List>(&value_))
        return *l;
    throw Error{Errc::malformed_rlp, "rlp: expected a list, found a byte string"};
}

uint256 Item::to_uint() const
{
    return minimal_be_to_int(str());
}

bytes encode(const Item& item)
{
    bytes out;
    encode_into(out, item);
    return out;
}

Item decode(bytes_view input)
{
    size_t consumed = 0;
    auto item = decode_item(input, consumed, 0);
    if (consumed != input.size())
        throw Error{Errc::trailing_bytes,
            "rlp: " + std::to_string(input.size() - consumed) + " bytes after the item"};
    return item;
}
}  // namespace workbench::rlp
