// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace workbench::abi
{
using Integer = boost::multiprecision::cpp_int;

/// A single ABI parameter type. Tuples and fixed-point types are not
/// representable; the parser rejects them.
class ParamType
{
public:
    enum class Kind
    {
        uint,
        int_,
        address,
        bool_,
        fixed_bytes,
        bytes,
        string,
        array,
    };

    static ParamType uint(unsigned bits = 256);
    static ParamType int_(unsigned bits = 256);
    static ParamType address() { return ParamType{Kind::address, 0}; }
    static ParamType bool_() { return ParamType{Kind::bool_, 0}; }
    static ParamType fixed_bytes(unsigned len);
    static ParamType bytes() { return ParamType{Kind::bytes, 0}; }
    static ParamType string() { return ParamType{Kind::string, 0}; }
    /// `length` absent means a dynamic array.
    static ParamType array(ParamType elem, std::optional<size_t> length = std::nullopt);

    /// Parses a Solidity type name such as "uint", "bytes32" or "address[2][]".
    /// Throws Error{unsupported_type} for tuples, fixed-point types and
    /// anything else outside the supported set.
    static ParamType parse(std::string_view name);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    /// Bit width for integers, byte length for fixed bytes.
    [[nodiscard]] unsigned size() const noexcept { return size_; }
    [[nodiscard]] const ParamType& element() const noexcept { return *elem_; }
    [[nodiscard]] std::optional<size_t> length() const noexcept { return length_; }

    [[nodiscard]] bool is_dynamic() const noexcept;
    /// Bytes this type occupies in the head section of an enclosing tuple.
    [[nodiscard]] size_t head_size() const noexcept;
    [[nodiscard]] std::string canonical() const;

    friend bool operator==(const ParamType& a, const ParamType& b) noexcept;

private:
    ParamType(Kind k, unsigned size) noexcept : kind_{k}, size_{size} {}

    Kind kind_;
    unsigned size_ = 0;
    std::shared_ptr<const ParamType> elem_;
    std::optional<size_t> length_;
};

/// A typed argument or return value.
class Value
{
public:
    using Array = std::vector<Value>;

    Value() : v_{false} {}
    Value(Integer i) : v_{std::move(i)} {}
    Value(int i) : v_{Integer{i}} {}
    Value(Address a) : v_{a} {}
    Value(bool b) : v_{b} {}
    Value(workbench::bytes b) : v_{std::move(b)} {}
    Value(std::string s) : v_{std::move(s)} {}
    Value(const char* s) : v_{std::string{s}} {}
    Value(Array a) : v_{std::move(a)} {}

    [[nodiscard]] const Integer* integer() const noexcept { return std::get_if<Integer>(&v_); }
    [[nodiscard]] const Address* address() const noexcept { return std::get_if<Address>(&v_); }
    [[nodiscard]] const bool* boolean() const noexcept { return std::get_if<bool>(&v_); }
    [[nodiscard]] const workbench::bytes* blob() const noexcept { return std::get_if<workbench::bytes>(&v_); }
    [[nodiscard]] const std::string* text() const noexcept { return std::get_if<std::string>(&v_); }
    [[nodiscard]] const Array* array() const noexcept { return std::get_if<Array>(&v_); }

    friend bool operator==(const Value& a, const Value& b);

private:
    std::variant<Integer, Address, bool, workbench::bytes, std::string, Array> v_;
};

enum class Mutability
{
    view,
    nonpayable,
    payable,
};

std::string_view to_string(Mutability m) noexcept;

struct Param
{
    std::string name;
    ParamType type;
};

struct Function
{
    std::string name;
    std::vector<Param> inputs;
    std::vector<ParamType> outputs;
    Mutability mutability = Mutability::nonpayable;

    /// "name(type1,type2)" with canonical type names.
    [[nodiscard]] std::string signature() const;
    [[nodiscard]] FixedBytes<4> selector() const;
    [[nodiscard]] std::vector<ParamType> input_types() const;
    [[nodiscard]] bool is_view() const noexcept { return mutability == Mutability::view; }
};

/// What a contract exposes: callable functions plus constructor inputs.
struct Interface
{
    std::vector<Function> functions;
    std::optional<std::vector<Param>> constructor;

    /// Looks up by full signature ("set(uint256)") or by bare name. A bare
    /// name matching several overloads is narrowed by `arity` when given.
    /// Throws Error{no_such_method}.
    [[nodiscard]] const Function& find(
        std::string_view name_or_signature, std::optional<size_t> arity = std::nullopt) const;

    [[nodiscard]] std::vector<ParamType> constructor_types() const;
};

/// First four bytes of keccak256 of the signature text.
FixedBytes<4> selector(std::string_view signature) noexcept;

/// Head/tail encoding of a tuple of values.
/// Errors: type_mismatch, value_out_of_range.
workbench::bytes encode_args(std::span<const ParamType> types, std::span<const Value> values);

/// Strict inverse of encode_args.
/// Errors: data_too_short, offset_out_of_bounds, bool_not_canonical, padding_not_zero.
std::vector<Value> decode_values(std::span<const ParamType> types, bytes_view data);

/// selector ++ encoded arguments.
workbench::bytes encode_call(const Function& fn, std::span<const Value> values);

/// bytecode ++ encoded constructor arguments. Errors: empty_bytecode, type_mismatch.
workbench::bytes encode_constructor(
    bytes_view bytecode, std::span<const ParamType> types, std::span<const Value> values);

/// The all-zero value of a type (dynamic types are empty).
Value zero_value(const ParamType& type);

/// Throws Error{type_mismatch} or Error{value_out_of_range} unless `value`
/// is well-typed against `type`.
void check_value(const ParamType& type, const Value& value);
}  // namespace workbench::abi
