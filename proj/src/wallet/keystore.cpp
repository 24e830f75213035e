// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/error.hpp>
#include <workbench/wallet/keystore.hpp>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <memory>

namespace workbench::wallet
{
namespace
{
constexpr size_t derived_len = 32;

struct DerivedKey
{
    std::array<uint8_t, derived_len> bytes{};
    ~DerivedKey() { OPENSSL_cleanse(bytes.data(), bytes.size()); }
};

void derive(DerivedKey& out, std::string_view passphrase, bytes_view salt, uint32_t iterations)
{
    if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()), salt.data(),
            static_cast<int>(salt.size()), static_cast<int>(iterations), EVP_sha256(),
            static_cast<int>(out.bytes.size()), out.bytes.data()) != 1)
        throw Error{Errc::crypto_failure, "PBKDF2 failed"};
}

bytes aes128_ctr(bytes_view key, bytes_view iv, bytes_view input)
{
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx{EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free};
    bytes out(input.size());
    int len = 0, tail = 0;
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ctr(), nullptr, key.data(), iv.data()) != 1 ||
        EVP_EncryptUpdate(ctx.get(), out.data(), &len, input.data(), static_cast<int>(input.size())) != 1 ||
        EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1)
        throw Error{Errc::crypto_failure, "AES-128-CTR failed"};
    return out;
}

Digest32 compute_mac(const DerivedKey& dk, bytes_view ciphertext)
{
    return Keccak256{}.update(bytes_view{dk.bytes}.subspan(16)).update(ciphertext).finalize();
}

bytes hex_field(const nlohmann::json& obj, const char* key)
{
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        throw Error{Errc::malformed_keystore, std::string{"keystore lacks '"} + key + "'"};
    try
    {
        return from_hex(it->get<std::string>());
    }
    catch (const Error&)
    {
        throw Error{Errc::malformed_keystore, std::string{"keystore field '"} + key + "' is not hex"};
    }
}
}  // namespace

EncryptedKeystore encrypt_key(
    const PrivateKey& key, std::string_view passphrase, util::RandomSource& entropy, uint32_t iterations)
{
    if (passphrase.empty())
        throw Error{Errc::invalid_argument, "keystore passphrase must not be empty"};
    if (iterations == 0)
        throw Error{Errc::invalid_argument, "keystore KDF needs at least one iteration"};

    EncryptedKeystore ks;
    ks.iterations = iterations;
    ks.salt = entropy.draw<32>().to_bytes();
    ks.iv = entropy.draw<16>().to_bytes();
    ks.address = key.address();

    DerivedKey dk;
    derive(dk, passphrase, ks.salt, iterations);
    ks.ciphertext = aes128_ctr(bytes_view{dk.bytes}.first(16), ks.iv, key.secret().view());
    ks.mac = compute_mac(dk, ks.ciphertext);
    return ks;
}

PrivateKey decrypt_key(const EncryptedKeystore& ks, std::string_view passphrase)
{
    if (ks.iv.size() != 16 || ks.ciphertext.size() != 32 || ks.iterations == 0)
        throw Error{Errc::malformed_keystore, "keystore has unexpected sizes"};

    DerivedKey dk;
    derive(dk, passphrase, ks.salt, ks.iterations);
    const auto mac = compute_mac(dk, ks.ciphertext);
    if (CRYPTO_memcmp(mac.bytes.data(), ks.mac.bytes.data(), mac.bytes.size()) != 0)
        throw Error{Errc::mac_mismatch, "keystore MAC mismatch: wrong passphrase or corrupted keystore"};

    auto plain = aes128_ctr(bytes_view{dk.bytes}.first(16), ks.iv, ks.ciphertext);
    auto key = PrivateKey::from_bytes(plain);
    OPENSSL_cleanse(plain.data(), plain.size());
    return key;
}

nlohmann::json EncryptedKeystore::to_json() const
{
    nlohmann::json j = {
        {"version", 3},
        {"crypto",
            {
                {"cipher", "aes-128-ctr"},
                {"cipherparams", {{"iv", to_hex_raw(iv)}}},
                {"ciphertext", to_hex_raw(ciphertext)},
                {"kdf", "pbkdf2"},
                {"kdfparams",
                    {{"c", iterations}, {"dklen", derived_len}, {"prf", "hmac-sha256"}, {"salt", to_hex_raw(salt)}}},
                {"mac", to_hex_raw(mac.view())},
            }},
    };
    if (address)
        j["address"] = to_hex_raw(address->view());
    return j;
}

EncryptedKeystore EncryptedKeystore::from_json(const nlohmann::json& j)
{
    if (!j.is_object() || j.value("version", 0) != 3 || !j.contains("crypto") || !j["crypto"].is_object())
        throw Error{Errc::malformed_keystore, "not a version 3 keystore"};
    const auto& c = j["crypto"];
    if (c.value("cipher", "") != "aes-128-ctr" || c.value("kdf", "") != "pbkdf2")
        throw Error{Errc::malformed_keystore, "keystore must use pbkdf2 and aes-128-ctr"};
    const auto& kp = c.value("kdfparams", nlohmann::json::object());
    if (kp.value("prf", "") != "hmac-sha256" || kp.value("dklen", 0) != static_cast<int>(derived_len) ||
        !kp.contains("c") || !kp["c"].is_number_unsigned())
        throw Error{Errc::malformed_keystore, "unsupported kdf parameters"};

    EncryptedKeystore ks;
    ks.iterations = kp["c"].get<uint32_t>();
    ks.salt = hex_field(kp, "salt");
    ks.iv = hex_field(c.value("cipherparams", nlohmann::json::object()), "iv");
    ks.ciphertext = hex_field(c, "ciphertext");
    const auto mac = hex_field(c, "mac");
    if (mac.size() != 32)
        throw Error{Errc::malformed_keystore, "mac must be 32 bytes"};
    ks.mac = Digest32::from(mac);
    if (j.contains("address"))
    {
        const auto a = hex_field(j, "address");
        if (a.size() != 20)
            throw Error{Errc::malformed_keystore, "address must be 20 bytes"};
        ks.address = Address::from(a);
    }
    return ks;
}
}  // namespace workbench::wallet
