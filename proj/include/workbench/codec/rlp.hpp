// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <string_view>
#include <variant>
#include <vector>

namespace workbench::rlp
{
/// Largest string or list payload accepted by either direction.
inline constexpr size_t max_payload = 16 * 1024 * 1024;

/// Deepest list nesting the decoder will follow.
inline constexpr size_t max_depth = 1024;

/// An RLP value: either a byte string or a list of items.
class Item
{
public:
    using List = std::vector<Item>;

    Item() = default;
    Item(bytes str) : value_{std::move(str)} {}
    Item(List list) : value_{std::move(list)} {}

    static Item string(bytes_view v) { return Item{bytes{v.begin(), v.end()}}; }
    static Item string(std::string_view s) { return Item{bytes{s.begin(), s.end()}}; }
    /// Integer in minimal big-endian form.
    static Item uint(const uint256& n);

    [[nodiscard]] bool is_list() const noexcept { return std::holds_alternative<List>(value_); }

    /// Throw Error{malformed_rlp} on a variant mismatch.
    [[nodiscard]] const bytes& str() const;
    [[nodiscard]] const List& list() const;
    /// Reads a minimal big-endian integer of at most 32 bytes.
    [[nodiscard]] uint256 to_uint() const;

    friend bool operator==(const Item&, const Item&) = default;

private:
    std::variant<bytes, List> value_;
};

/// Canonical encoding. Throws Error{payload_too_large}.
bytes encode(const Item& item);

/// Strict decode of exactly one item spanning the whole input.
/// Errors: truncated_input, trailing_bytes, non_canonical, payload_too_large.
Item decode(bytes_view input);
}  // namespace workbench::rlp

namespace workbench
{
using RlpItem = rlp::Item;
}
