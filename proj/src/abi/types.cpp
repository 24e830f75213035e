// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/abi/abi.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/error.hpp>
#include <charconv>

namespace workbench::abi
{
namespace
{
// Nested dynamic arrays deeper than this are refused at parse time.
constexpr size_t max_dynamic_dims = 2;

[[noreturn]] void unsupported(std::string_view name, std::string_view why)
{
    throw Error{Errc::unsupported_type, "unsupported ABI type '" + std::string{name} + "': " +
                                            std::string{why}};
}

std::optional<unsigned> parse_number(std::string_view s)
{
    if (s.empty() || s[0] == '0')
        return std::nullopt;
    unsigned v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

ParamType parse_base(std::string_view full, std::string_view base)
{
    if (base == "address")
        return ParamType::address();
    if (base == "bool")
        return ParamType::bool_();
    if (base == "string")
        return ParamType::string();
    if (base == "bytes")
        return ParamType::bytes();
    if (base == "byte")
        return ParamType::fixed_bytes(1);
    if (base == "uint")
        return ParamType::uint(256);
    if (base == "int")
        return ParamType::int_(256);

    if (base.starts_with("uint") || base.starts_with("int"))
    {
        const bool is_unsigned = base.starts_with("uint");
        const auto bits = parse_number(base.substr(is_unsigned ? 4 : 3));
        if (!bits || *bits % 8 != 0 || *bits < 8 || *bits > 256)
            unsupported(full, "integer width must be a multiple of 8 in [8, 256]");
        return is_unsigned ? ParamType::uint(*bits) : ParamType::int_(*bits);
    }
    if (base.starts_with("bytes"))
    {
        const auto len = parse_number(base.substr(5));
        if (!len || *len > 32)
            unsupported(full, "fixed bytes length must be in [1, 32]");
        return ParamType::fixed_bytes(*len);
    }
    if (base.starts_with("tuple") || base.starts_with("("))
        unsupported(full, "tuples are not supported");
    if (base.starts_with("fixed") || base.starts_with("ufixed"))
        unsupported(full, "fixed-point types are not supported");
    unsupported(full, "unknown type");
}
}  // namespace

ParamType ParamType::uint(unsigned bits)
{
    if (bits < 8 || bits > 256 || bits % 8 != 0)
        throw Error{Errc::unsupported_type, "uint width " + std::to_string(bits)};
    return ParamType{Kind::uint, bits};
}

ParamType ParamType::int_(unsigned bits)
{
    if (bits < 8 || bits > 256 || bits % 8 != 0)
        throw Error{Errc::unsupported_type, "int width " + std::to_string(bits)};
    return ParamType{Kind::int_, bits};
}

ParamType ParamType::fixed_bytes(unsigned len)
{
    if (len < 1 || len > 32)
        throw Error{Errc::unsupported_type, "bytes" + std::to_string(len)};
    return ParamType{Kind::fixed_bytes, len};
}

ParamType ParamType::array(ParamType elem, std::optional<size_t> length)
{
    if (length && *length == 0)
        throw Error{Errc::unsupported_type, "zero-length fixed array"};
    ParamType t{Kind::array, 0};
    t.elem_ = std::make_shared<const ParamType>(std::move(elem));
    t.length_ = length;
    return t;
}

ParamType ParamType::parse(std::string_view name)
{
    // Peel array suffixes from the right: "uint8[2][]" is a dynamic array of uint8[2].
    std::vector<std::optional<size_t>> dims;
    auto base = name;
    while (base.ends_with("]"))
    {
        const auto open = base.rfind('[');
        if (open == std::string_view::npos)
            unsupported(name, "unbalanced brackets");
        const auto inside = base.substr(open + 1, base.size() - open - 2);
        if (inside.empty())
            dims.emplace_back(std::nullopt);
        else if (const auto n = parse_number(inside))
            dims.emplace_back(*n);
        else
            unsupported(name, "array length must be a positive integer");
        base = base.substr(0, open);
    }

    size_t dynamic_dims = 0;
    for (const auto& d : dims)
        dynamic_dims += d ? 0 : 1;
    if (dynamic_dims > max_dynamic_dims)
        unsupported(name, "dynamic arrays nested deeper than 2");

    auto t = parse_base(name, base);
    for (auto it = dims.rbegin(); it != dims.rend(); ++it)
        t = array(std::move(t), *it);
    return t;
}

bool ParamType::is_dynamic() const noexcept
{
    switch (kind_)
    {
    case Kind::bytes:
    case Kind::string:
        return true;
    case Kind::array:
        return !length_ || elem_->is_dynamic();
    default:
        return false;
    }
}

size_t ParamType::head_size() const noexcept
{
    if (kind_ == Kind::array && !is_dynamic())
        return *length_ * elem_->head_size();
    return 32;
}

std::string ParamType::canonical() const
{
    switch (kind_)
    {
    case Kind::uint: return "uint" + std::to_string(size_);
    case Kind::int_: return "int" + std::to_string(size_);
    case Kind::address: return "address";
    case Kind::bool_: return "bool";
    case Kind::fixed_bytes: return "bytes" + std::to_string(size_);
    case Kind::bytes: return "bytes";
    case Kind::string: return "string";
    case Kind::array:
        return elem_->canonical() + "[" + (length_ ? std::to_string(*length_) : "") + "]";
    }
    return {};
}

bool operator==(const ParamType& a, const ParamType& b) noexcept
{
    if (a.kind_ != b.kind_ || a.size_ != b.size_ || a.length_ != b.length_)
        return false;
    if (a.kind_ != ParamType::Kind::array)
        return true;
    return *a.elem_ == *b.elem_;
}

bool operator==(const Value& a, const Value& b)
{
    return a.v_ == b.v_;
}

std::string_view to_string(Mutability m) noexcept
{
    switch (m)
    {
    case Mutability::view: return "view";
    case Mutability::nonpayable: return "nonpayable";
    case Mutability::payable: return "payable";
    }
    return "nonpayable";
}

std::string Function::signature() const
{
    std::string s = name + "(";
    for (size_t i = 0; i < inputs.size(); ++i)
    {
        if (i != 0)
            s += ',';
        s += inputs[i].type.canonical();
    }
    return s + ")";
}

FixedBytes<4> Function::selector() const
{
    return abi::selector(signature());
}

std::vector<ParamType> Function::input_types() const
{
    std::vector<ParamType> types;
    types.reserve(inputs.size());
    for (const auto& p : inputs)
        types.push_back(p.type);
    return types;
}

const Function& Interface::find(std::string_view key, std::optional<size_t> arity) const
{
    if (key.find('(') != std::string_view::npos)
    {
        for (const auto& f : functions)
            if (f.signature() == key)
                return f;
        throw Error{Errc::no_such_method, "no method with signature " + std::string{key}};
    }

    std::vector<const Function*> named;
    for (const auto& f : functions)
        if (f.name == key)
            named.push_back(&f);
    if (named.empty())
        throw Error{Errc::no_such_method, "no method named " + std::string{key}};
    if (named.size() == 1)
        return *named.front();

    if (arity)
    {
        std::erase_if(named, [&](const Function* f) { return f->inputs.size() != *arity; });
        if (named.size() == 1)
            return *named.front();
    }
    throw Error{Errc::no_such_method,
        "method name '" + std::string{key} + "' is overloaded; use the full signature"};
}

std::vector<ParamType> Interface::constructor_types() const
{
    std::vector<ParamType> types;
    if (constructor)
        for (const auto& p : *constructor)
            types.push_back(p.type);
    return types;
}

FixedBytes<4> selector(std::string_view signature) noexcept
{
    return FixedBytes<4>::from(keccak256(signature).view());
}
}  // namespace workbench::abi
