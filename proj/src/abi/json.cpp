// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/abi/json.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/error.hpp>
#include <set>

namespace workbench::abi
{
namespace
{
using nlohmann::json;
using Kind = ParamType::Kind;

[[noreturn]] void malformed(const std::string& what)
{
    throw Error{Errc::malformed_json, "ABI JSON: " + what};
}

std::string string_field(const json& entry, const char* key)
{
    const auto it = entry.find(key);
    if (it == entry.end())
        return {};
    if (!it->is_string())
        malformed(std::string{"field '"} + key + "' must be a string");
    return it->get<std::string>();
}

ParamType param_type(const json& p)
{
    if (!p.is_object())
        malformed("parameter must be an object");
    const auto type = string_field(p, "type");
    if (type.empty())
        malformed("parameter without a type");
    return ParamType::parse(type);
}

std::vector<Param> params(const json& entry, const char* key)
{
    std::vector<Param> out;
    const auto it = entry.find(key);
    if (it == entry.end() || it->is_null())
        return out;
    if (!it->is_array())
        malformed(std::string{"'"} + key + "' must be an array");
    for (const auto& p : *it)
        out.push_back({string_field(p, "name"), param_type(p)});
    return out;
}

Mutability mutability(const json& entry)
{
    const auto state = string_field(entry, "stateMutability");
    if (state == "view" || state == "pure")
        return Mutability::view;
    if (state == "payable")
        return Mutability::payable;
    if (state == "nonpayable")
        return Mutability::nonpayable;
    if (!state.empty())
        malformed("unknown stateMutability '" + state + "'");

    // Legacy compilers emitted boolean flags instead.
    if (entry.value("constant", false))
        return Mutability::view;
    if (entry.value("payable", false))
        return Mutability::payable;
    return Mutability::nonpayable;
}

Integer integer_from_json(const ParamType& t, const json& j)
{
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Integer{j.get<uint64_t>()} : Integer{j.get<int64_t>()};
    if (!j.is_string())
        throw Error{Errc::type_mismatch, t.canonical() + " expects a decimal string"};

    auto s = j.get<std::string>();
    try
    {
        if (s.starts_with("0x") || s.starts_with("0X"))
        {
            if (s.size() == 2)
                throw Error{Errc::type_mismatch, "empty hex integer"};
            const auto raw = from_hex(s.size() % 2 == 0 ? s : "0x0" + s.substr(2));
            Integer v = 0;
            for (const auto b : raw)
                v = (v << 8) | b;
            return v;
        }
        const bool negative = !s.empty() && s[0] == '-';
        const auto digits = std::string_view{s}.substr(negative ? 1 : 0);
        if (digits.empty() || digits.size() > 80 ||
            digits.find_first_not_of("0123456789") != std::string_view::npos)
            throw Error{Errc::type_mismatch, "'" + s + "' is not a decimal integer"};
        Integer v{std::string{digits}};
        return negative ? Integer{-v} : v;
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::invalid_hex)
            throw Error{Errc::type_mismatch, t.canonical() + ": " + e.what()};
        throw;
    }
}

workbench::bytes blob_from_json(const ParamType& t, const json& j)
{
    if (!j.is_string())
        throw Error{Errc::type_mismatch, t.canonical() + " expects 0x-hex"};
    try
    {
        return from_hex(j.get<std::string>());
    }
    catch (const Error& e)
    {
        throw Error{Errc::type_mismatch, t.canonical() + ": " + e.what()};
    }
}
}  // namespace

Interface parse_abi_json(std::string_view text)
{
    const auto doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        malformed("not valid JSON");
    if (!doc.is_array())
        malformed("top level must be an array");

    Interface iface;
    std::set<std::string> signatures;
    for (const auto& entry : doc)
    {
        if (!entry.is_object())
            malformed("entries must be objects");
        auto type = string_field(entry, "type");
        if (type.empty())
            type = "function";

        if (type == "event" || type == "error" || type == "fallback" || type == "receive")
            continue;
        if (type == "constructor")
        {
            if (iface.constructor)
                malformed("more than one constructor");
            iface.constructor = params(entry, "inputs");
            continue;
        }
        if (type != "function")
            malformed("unknown entry type '" + type + "'");

        Function fn;
        fn.name = string_field(entry, "name");
        if (fn.name.empty())
            malformed("function without a name");
        fn.inputs = params(entry, "inputs");
        for (auto& p : params(entry, "outputs"))
            fn.outputs.push_back(std::move(p.type));
        fn.mutability = mutability(entry);

        if (!signatures.insert(fn.signature()).second)
            throw Error{Errc::duplicate_signature, "duplicate function " + fn.signature()};
        iface.functions.push_back(std::move(fn));
    }
    return iface;
}

Value value_from_json(const ParamType& t, const json& j)
{
    Value v;
    switch (t.kind())
    {
    case Kind::uint:
    case Kind::int_:
        v = integer_from_json(t, j);
        break;
    case Kind::address:
    {
        const auto b = blob_from_json(t, j);
        if (b.size() != 20)
            throw Error{Errc::type_mismatch, "address must be 20 bytes"};
        v = Address::from(b);
        break;
    }
    case Kind::bool_:
        if (!j.is_boolean())
            throw Error{Errc::type_mismatch, "bool expects true or false"};
        v = j.get<bool>();
        break;
    case Kind::fixed_bytes:
    case Kind::bytes:
        v = blob_from_json(t, j);
        break;
    case Kind::string:
        if (!j.is_string())
            throw Error{Errc::type_mismatch, "string expects a JSON string"};
        v = j.get<std::string>();
        break;
    case Kind::array:
    {
        if (!j.is_array())
            throw Error{Errc::type_mismatch, t.canonical() + " expects a JSON array"};
        Value::Array items;
        for (const auto& e : j)
            items.push_back(value_from_json(t.element(), e));
        v = std::move(items);
        break;
    }
    }
    check_value(t, v);
    return v;
}

json value_to_json(const ParamType& t, const Value& v)
{
    switch (t.kind())
    {
    case Kind::uint:
    case Kind::int_: return v.integer()->str();
    case Kind::address: return to_hex(*v.address());
    case Kind::bool_: return *v.boolean();
    case Kind::fixed_bytes:
    case Kind::bytes: return to_hex(*v.blob());
    case Kind::string: return *v.text();
    case Kind::array:
    {
        auto arr = json::array();
        for (const auto& e : *v.array())
            arr.push_back(value_to_json(t.element(), e));
        return arr;
    }
    }
    return nullptr;
}

std::vector<Value> values_from_json(std::span<const ParamType> types, const json& args)
{
    if (args.is_null() && types.empty())
        return {};
    if (!args.is_array())
        throw Error{Errc::type_mismatch, "arguments must be a JSON array"};
    if (args.size() != types.size())
        throw Error{Errc::type_mismatch, "expected " + std::to_string(types.size()) + " arguments, got " +
                                             std::to_string(args.size())};
    std::vector<Value> out;
    for (size_t i = 0; i < types.size(); ++i)
        out.push_back(value_from_json(types[i], args[i]));
    return out;
}

json values_to_json(std::span<const ParamType> types, std::span<const Value> values)
{
    auto arr = json::array();
    for (size_t i = 0; i < types.size() && i < values.size(); ++i)
        arr.push_back(value_to_json(types[i], values[i]));
    return arr;
}

json function_to_json(const Function& fn)
{
    auto inputs = json::array();
    for (const auto& p : fn.inputs)
        inputs.push_back({{"name", p.name}, {"type", p.type.canonical()}});
    auto outputs = json::array();
    for (const auto& t : fn.outputs)
        outputs.push_back({{"type", t.canonical()}});
    return {
        {"name", fn.name},
        {"signature", fn.signature()},
        {"selector", to_hex(fn.selector())},
        {"mutability", to_string(fn.mutability)},
        {"call_only", fn.is_view()},
        {"inputs", std::move(inputs)},
        {"outputs", std::move(outputs)},
    };
}
}  // namespace workbench::abi
