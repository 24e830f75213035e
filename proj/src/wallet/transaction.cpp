// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/codec/keccak.hpp>
#include <workbench/codec/rlp.hpp>
#include <workbench/error.hpp>
#include <workbench/wallet/transaction.hpp>
#include <limits>

namespace workbench::wallet
{
namespace
{
rlp::Item::List common_fields(const LegacyTransaction& tx)
{
    return {
        rlp::Item::uint(tx.nonce),
        rlp::Item::uint(tx.gas_price),
        rlp::Item::uint(tx.gas_limit),
        tx.to ? rlp::Item::string(tx.to->view()) : rlp::Item{bytes{}},
        rlp::Item::uint(tx.value),
        rlp::Item{tx.data},
    };
}

[[noreturn]] void malformed(const std::string& what)
{
    throw Error{Errc::malformed_rlp, "transaction: " + what};
}

uint256 read_uint(const rlp::Item& item, const char* field)
{
    try
    {
        return item.to_uint();
    }
    catch (const Error& e)
    {
        malformed(std::string{field} + ": " + e.what());
    }
}

uint64_t read_u64(const rlp::Item& item, const char* field)
{
    const auto v = read_uint(item, field);
    if (v > std::numeric_limits<uint64_t>::max())
        malformed(std::string{field} + " exceeds 64 bits");
    return static_cast<uint64_t>(v);
}
}  // namespace

void LegacyTransaction::validate() const
{
    if (chain_id == 0)
        throw Error{Errc::invalid_argument, "chain id must be at least 1"};
    if (gas_limit == 0)
        throw Error{Errc::invalid_argument, "gas limit must be positive"};
    if (is_creation() && data.empty())
        throw Error{Errc::invalid_argument, "contract creation needs init code"};
}

Digest32 signing_hash(const LegacyTransaction& tx)
{
    auto fields = common_fields(tx);
    fields.push_back(rlp::Item::uint(tx.chain_id));
    fields.push_back(rlp::Item::uint(0));
    fields.push_back(rlp::Item::uint(0));
    return keccak256(rlp::encode(rlp::Item{std::move(fields)}));
}

bytes sign_transaction(const LegacyTransaction& tx, const PrivateKey& key)
{
    tx.validate();
    const auto sig = secp256k1::sign(signing_hash(tx), key.secret());
    auto fields = common_fields(tx);
    fields.push_back(rlp::Item::uint(uint256{tx.chain_id} * 2 + 35 + sig.recovery_id));
    fields.push_back(rlp::Item::uint(sig.r));
    fields.push_back(rlp::Item::uint(sig.s));
    return rlp::encode(rlp::Item{std::move(fields)});
}

RecoveredTransaction recover_sender(bytes_view raw)
{
    rlp::Item item;
    try
    {
        item = rlp::decode(raw);
    }
    catch (const Error& e)
    {
        malformed(e.what());
    }
    if (!item.is_list() || item.list().size() != 9)
        malformed("expected a 9-field list");
    const auto& f = item.list();
    for (const auto& field : f)
        if (field.is_list())
            malformed("nested list in a transaction field");

    RecoveredTransaction out;
    auto& tx = out.tx;
    tx.nonce = read_u64(f[0], "nonce");
    tx.gas_price = read_uint(f[1], "gas price");
    tx.gas_limit = read_u64(f[2], "gas limit");
    const auto& to = f[3].str();
    if (to.size() == 20)
        tx.to = Address::from(to);
    else if (!to.empty())
        malformed("recipient must be empty or 20 bytes");
    tx.value = read_uint(f[4], "value");
    tx.data = f[5].str();

    const auto v = read_uint(f[6], "v");
    out.signature.r = read_uint(f[7], "r");
    out.signature.s = read_uint(f[8], "s");

    if (v < 37)
        throw Error{Errc::wrong_chain_id, "v=" + v.str() + " carries no EIP-155 chain id"};
    const auto chain_id = (v - 35) / 2;
    if (chain_id > std::numeric_limits<uint64_t>::max())
        throw Error{Errc::wrong_chain_id, "chain id exceeds 64 bits"};
    tx.chain_id = static_cast<uint64_t>(chain_id);
    out.signature.v = static_cast<uint64_t>(v);
    const auto recovery_id = static_cast<uint8_t>((v - 35) % 2);

    const auto& n = secp256k1::group_order();
    const auto& [r, s, _] = out.signature;
    if (r == 0 || r >= n || s == 0 || s >= n)
        throw Error{Errc::bad_signature, "signature scalar out of range"};
    if (s > n / 2)
        throw Error{Errc::high_s, "signature s is in the upper half of the group order"};

    const auto pub = secp256k1::recover(signing_hash(tx), r, s, recovery_id);
    if (!pub)
        throw Error{Errc::bad_signature, "public key recovery failed"};
    out.sender = derive_address(*pub);
    return out;
}
}  // namespace workbench::wallet
