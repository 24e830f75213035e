// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/error.hpp>
#include <workbench/wallet/keys.hpp>
#include <openssl/crypto.h>
#include <cctype>

namespace workbench::wallet
{
PrivateKey PrivateKey::from_bytes(bytes_view raw)
{
    if (raw.size() != 32)
        throw Error{Errc::invalid_private_key, "private key must be 32 bytes"};
    const auto s = secp256k1::Secret::from(raw);
    if (!secp256k1::is_valid_secret(s))
        throw Error{Errc::invalid_private_key, "private key scalar out of range"};
    return PrivateKey{s};
}

PrivateKey::~PrivateKey()
{
    OPENSSL_cleanse(secret_.bytes.data(), secret_.bytes.size());
}

PublicKey PrivateKey::public_key() const
{
    return secp256k1::derive_public(secret_);
}

Address PrivateKey::address() const
{
    return derive_address(public_key());
}

KeyPair generate_keypair(util::RandomSource& entropy)
{
    for (;;)
    {
        auto candidate = entropy.draw<32>();
        const bool valid = secp256k1::is_valid_secret(candidate);
        if (valid)
        {
            auto key = PrivateKey::from_bytes(candidate.view());
            OPENSSL_cleanse(candidate.bytes.data(), candidate.bytes.size());
            auto address = key.address();
            return {std::move(key), address};
        }
    }
}

Address derive_address(const PublicKey& pubkey)
{
    if (!secp256k1::is_on_curve(pubkey))
        throw Error{Errc::point_not_on_curve, "public key is not a point on secp256k1"};
    return Address::from(keccak256(pubkey.view()).view().subspan(12));
}

std::string checksum_address(const Address& a)
{
    const auto lower = to_hex_raw(a.view());
    const auto h = keccak256(std::string_view{lower});
    std::string out = "0x";
    for (size_t i = 0; i < lower.size(); ++i)
    {
        const auto nibble = (h.bytes[i / 2] >> (i % 2 == 0 ? 4 : 0)) & 0xf;
        out += nibble >= 8 ? static_cast<char>(std::toupper(lower[i])) : lower[i];
    }
    return out;
}
}  // namespace workbench::wallet
