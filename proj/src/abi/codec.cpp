// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/abi/abi.hpp>
#include <workbench/error.hpp>

namespace workbench::abi
{
namespace
{
using Kind = ParamType::Kind;
constexpr size_t word = 32;

[[noreturn]] void mismatch(const ParamType& t, std::string_view what)
{
    throw Error{Errc::type_mismatch, "expected " + t.canonical() + ": " + std::string{what}};
}

Integer two_pow(unsigned bits)
{
    return Integer{1} << bits;
}

size_t padded(size_t n) noexcept
{
    return (n + word - 1) / word * word;
}

void put_word(workbench::bytes& out, const Integer& v)
{
    // Two's complement over 256 bits.
    Integer u = v < 0 ? two_pow(256) + v : v;
    uint8_t w[word] = {};
    for (size_t i = word; i-- > 0 && u != 0;)
    {
        w[i] = static_cast<uint8_t>(u & 0xff);
        u >>= 8;
    }
    out.insert(out.end(), w, w + word);
}

void put_size(workbench::bytes& out, size_t n)
{
    put_word(out, Integer{n});
}

void put_padded(workbench::bytes& out, bytes_view data)
{
    append(out, data);
    out.resize(out.size() + padded(data.size()) - data.size(), 0);
}

std::vector<ParamType> repeat(const ParamType& t, size_t n)
{
    return std::vector<ParamType>(n, t);
}

void encode_tuple(workbench::bytes& out, std::span<const ParamType> types, std::span<const Value> values);

void encode_single(workbench::bytes& out, const ParamType& t, const Value& v)
{
    switch (t.kind())
    {
    case Kind::uint:
    case Kind::int_:
        put_word(out, *v.integer());
        return;
    case Kind::address:
    {
        out.resize(out.size() + 12, 0);
        append(out, v.address()->view());
        return;
    }
    case Kind::bool_:
        put_word(out, *v.boolean() ? 1 : 0);
        return;
    case Kind::fixed_bytes:
        put_padded(out, *v.blob());
        return;
    case Kind::bytes:
        put_size(out, v.blob()->size());
        put_padded(out, *v.blob());
        return;
    case Kind::string:
    {
        const auto& s = *v.text();
        put_size(out, s.size());
        put_padded(out, {reinterpret_cast<const uint8_t*>(s.data()), s.size()});
        return;
    }
    case Kind::array:
    {
        const auto& items = *v.array();
        if (!t.length())
            put_size(out, items.size());
        encode_tuple(out, repeat(t.element(), items.size()), items);
        return;
    }
    }
}

void encode_tuple(workbench::bytes& out, std::span<const ParamType> types, std::span<const Value> values)
{
    size_t head_len = 0;
    for (const auto& t : types)
        head_len += t.head_size();

    workbench::bytes tail;
    for (size_t i = 0; i < types.size(); ++i)
    {
        if (types[i].is_dynamic())
        {
            put_size(out, head_len + tail.size());
            encode_single(tail, types[i], values[i]);
        }
        else
            encode_single(out, types[i], values[i]);
    }
    append(out, tail);
}

// Decoding

Integer read_word(bytes_view data, size_t pos)
{
    Integer v = 0;
    for (size_t i = 0; i < word; ++i)
        v = (v << 8) | data[pos + i];
    return v;
}

void need(bytes_view data, size_t pos, size_t len)
{
    if (pos > data.size() || data.size() - pos < len)
        throw Error{Errc::data_too_short, "ABI data ends before the value at byte " + std::to_string(pos)};
}

size_t read_size(bytes_view data, size_t pos, Errc on_overflow)
{
    need(data, pos, word);
    const auto v = read_word(data, pos);
    if (v > data.size())
        throw Error{on_overflow, "ABI length or offset " + v.str() + " exceeds the data"};
    return static_cast<size_t>(v);
}

void check_zero(bytes_view data, size_t pos, size_t len)
{
    for (size_t i = 0; i < len; ++i)
        if (data[pos + i] != 0)
            throw Error{Errc::padding_not_zero, "nonzero padding at byte " + std::to_string(pos + i)};
}

std::vector<Value> decode_tuple(std::span<const ParamType> types, bytes_view data);

Value decode_single(const ParamType& t, bytes_view data, size_t pos)
{
    switch (t.kind())
    {
    case Kind::uint:
    {
        need(data, pos, word);
        const auto v = read_word(data, pos);
        if (v >= two_pow(t.size()))
            throw Error{Errc::padding_not_zero, t.canonical() + " value has high bits set"};
        return v;
    }
    case Kind::int_:
    {
        need(data, pos, word);
        auto v = read_word(data, pos);
        if (v >= two_pow(255))
            v -= two_pow(256);
        const auto half = two_pow(t.size() - 1);
        if (v < -half || v >= half)
            throw Error{Errc::padding_not_zero, t.canonical() + " value is not sign-extended"};
        return v;
    }
    case Kind::address:
        need(data, pos, word);
        check_zero(data, pos, 12);
        return Address::from(data.subspan(pos + 12, 20));
    case Kind::bool_:
    {
        need(data, pos, word);
        const auto v = read_word(data, pos);
        if (v > 1)
            throw Error{Errc::bool_not_canonical, "bool word is " + v.str()};
        return v == 1;
    }
    case Kind::fixed_bytes:
        need(data, pos, word);
        check_zero(data, pos + t.size(), word - t.size());
        return workbench::bytes(data.begin() + static_cast<ptrdiff_t>(pos),
            data.begin() + static_cast<ptrdiff_t>(pos + t.size()));
    case Kind::bytes:
    case Kind::string:
    {
        const auto len = read_size(data, pos, Errc::data_too_short);
        need(data, pos + word, padded(len));
        check_zero(data, pos + word + len, padded(len) - len);
        const auto first = data.begin() + static_cast<ptrdiff_t>(pos + word);
        if (t.kind() == Kind::bytes)
            return workbench::bytes(first, first + static_cast<ptrdiff_t>(len));
        return std::string(first, first + static_cast<ptrdiff_t>(len));
    }
    case Kind::array:
    {
        size_t count = 0;
        auto body = data.subspan(std::min(pos, data.size()));
        if (t.length())
            count = *t.length();
        else
        {
            count = read_size(data, pos, Errc::data_too_short);
            body = data.subspan(pos + word);
        }
        // every element occupies at least one head word
        if (count > body.size() / word)
            throw Error{Errc::data_too_short, "array of " + std::to_string(count) + " elements exceeds the data"};
        return Value{decode_tuple(repeat(t.element(), count), body)};
    }
    }
    return {};
}

std::vector<Value> decode_tuple(std::span<const ParamType> types, bytes_view data)
{
    std::vector<Value> out;
    out.reserve(types.size());
    size_t pos = 0;
    for (const auto& t : types)
    {
        if (t.is_dynamic())
        {
            need(data, pos, word);
            const auto offset = read_size(data, pos, Errc::offset_out_of_bounds);
            out.push_back(decode_single(t, data, offset));
        }
        else
            out.push_back(decode_single(t, data, pos));
        pos += t.head_size();
    }
    return out;
}
}  // namespace

void check_value(const ParamType& t, const Value& v)
{
    switch (t.kind())
    {
    case Kind::uint:
    {
        const auto* i = v.integer();
        if (!i)
            mismatch(t, "not an integer");
        if (*i < 0 || *i >= two_pow(t.size()))
            throw Error{Errc::value_out_of_range, i->str() + " does not fit " + t.canonical()};
        return;
    }
    case Kind::int_:
    {
        const auto* i = v.integer();
        if (!i)
            mismatch(t, "not an integer");
        const auto half = two_pow(t.size() - 1);
        if (*i < -half || *i >= half)
            throw Error{Errc::value_out_of_range, i->str() + " does not fit " + t.canonical()};
        return;
    }
    case Kind::address:
        if (!v.address())
            mismatch(t, "not an address");
        return;
    case Kind::bool_:
        if (!v.boolean())
            mismatch(t, "not a boolean");
        return;
    case Kind::fixed_bytes:
        if (!v.blob() || v.blob()->size() != t.size())
            mismatch(t, "needs exactly " + std::to_string(t.size()) + " bytes");
        return;
    case Kind::bytes:
        if (!v.blob())
            mismatch(t, "not a byte string");
        return;
    case Kind::string:
        if (!v.text())
            mismatch(t, "not a string");
        return;
    case Kind::array:
    {
        const auto* items = v.array();
        if (!items)
            mismatch(t, "not an array");
        if (t.length() && items->size() != *t.length())
            mismatch(t, "has " + std::to_string(items->size()) + " elements");
        for (const auto& item : *items)
            check_value(t.element(), item);
        return;
    }
    }
}

workbench::bytes encode_args(std::span<const ParamType> types, std::span<const Value> values)
{
    if (types.size() != values.size())
        throw Error{Errc::type_mismatch, "expected " + std::to_string(types.size()) + " arguments, got " +
                                             std::to_string(values.size())};
    for (size_t i = 0; i < types.size(); ++i)
        check_value(types[i], values[i]);

    workbench::bytes out;
    encode_tuple(out, types, values);
    return out;
}

std::vector<Value> decode_values(std::span<const ParamType> types, bytes_view data)
{
    if (data.size() % word != 0)
        throw Error{Errc::data_too_short, "ABI data length " + std::to_string(data.size()) +
                                              " is not a multiple of 32"};
    return decode_tuple(types, data);
}

workbench::bytes encode_call(const Function& fn, std::span<const Value> values)
{
    const auto types = fn.input_types();
    auto args = encode_args(types, values);
    const auto sel = fn.selector();
    workbench::bytes out(sel.bytes.begin(), sel.bytes.end());
    append(out, args);
    return out;
}

workbench::bytes encode_constructor(
    bytes_view bytecode, std::span<const ParamType> types, std::span<const Value> values)
{
    if (bytecode.empty())
        throw Error{Errc::empty_bytecode, "contract bytecode is empty"};
    return concat(bytecode, encode_args(types, values));
}

Value zero_value(const ParamType& t)
{
    switch (t.kind())
    {
    case Kind::uint:
    case Kind::int_: return Integer{0};
    case Kind::address: return Address{};
    case Kind::bool_: return false;
    case Kind::fixed_bytes: return workbench::bytes(t.size(), 0);
    case Kind::bytes: return workbench::bytes{};
    case Kind::string: return std::string{};
    case Kind::array:
        if (!t.length())
            return Value::Array{};
        return Value::Array(*t.length(), zero_value(t.element()));
    }
    return {};
}
}  // namespace workbench::abi
