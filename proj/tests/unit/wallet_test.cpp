// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <oracle/openssl_ec.hpp>
#include <oracle/rlp_reference.hpp>
#include <oracle/keccak_reference.hpp>
#include <support/generators.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/codec/rlp.hpp>
#include <workbench/error.hpp>
#include <workbench/wallet/keystore.hpp>
#include <workbench/wallet/transaction.hpp>
#include <gtest/gtest.h>
#include <chrono>

using namespace workbench;
using namespace workbench::wallet;
using testing_support::Gen;
using testing_support::SeededRandom;

namespace
{
Errc error_of(auto&& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::invalid_argument;
}

PrivateKey key_of(uint8_t fill)
{
    return PrivateKey::from_bytes(bytes(32, fill));
}

LegacyTransaction eip155_example()
{
    LegacyTransaction tx;
    tx.nonce = 9;
    tx.gas_price = uint256{20'000'000'000ULL};
    tx.gas_limit = 21000;
    tx.to = Address::from(bytes(20, 0x35));
    tx.value = uint256{1'000'000'000'000'000'000ULL};
    tx.chain_id = 1;
    return tx;
}

LegacyTransaction random_tx(Gen& g)
{
    static constexpr uint64_t chains[] = {1, 1337, 10001};
    LegacyTransaction tx;
    tx.nonce = g.below(1000);
    tx.gas_price = g.coin() ? uint256{0} : g.u256(64);
    tx.gas_limit = 21000 + g.below(5'000'000);
    tx.chain_id = chains[g.below(3)];
    tx.value = g.coin() ? uint256{0} : uint256{1'000'000'000'000'000'000ULL};
    if (g.coin())
    {
        tx.data = g.blob(200);
        if (tx.data.empty())
            tx.data = {0x60};
    }
    else
    {
        Address to;
        for (auto& b : to.bytes)
            b = static_cast<uint8_t>(g.next());
        tx.to = to;
        if (g.coin())
            tx.data = g.blob(100);
    }
    return tx;
}

std::array<uint8_t, 32> arr32(const uint256& v)
{
    return to_be32(v).bytes;
}

/// The other EIP-155 v value for the same chain id.
uint64_t other_parity(uint64_t v, uint64_t chain_id)
{
    return v == chain_id * 2 + 35 ? chain_id * 2 + 36 : chain_id * 2 + 35;
}

/// Rewrites the signature fields of a raw transaction.
bytes resign_fields(bytes_view raw, const uint256& v, const uint256& r, const uint256& s)
{
    auto fields = rlp::decode(raw).list();
    fields[6] = rlp::Item::uint(v);
    fields[7] = rlp::Item::uint(r);
    fields[8] = rlp::Item::uint(s);
    return rlp::encode(rlp::Item{fields});
}
}  // namespace

TEST(keys, address_of_scalar_one)
{
    const auto key = PrivateKey::from_bytes(from_hex("0x" + std::string(62, '0') + "01"));
    EXPECT_EQ(checksum_address(key.address()), "0x7E5F4552091A69125d5DfCb7b8C2659029395Bdf");
    EXPECT_EQ(key.address(), key.address());
    EXPECT_EQ(key.address().view().size(), 20u);
    EXPECT_EQ(checksum_address(key_of(0x46).address()), "0x9d8A62f656a8d1615C1294fd71e9CFb3E4855A4F");
}

TEST(keys, public_keys_match_openssl)
{
    oracle::OpenSslSecp256k1 ec;
    Gen g{3};
    for (int i = 0; i < 25; ++i)
    {
        auto secret = g.u256();
        if (secret == 0 || secret >= secp256k1::group_order())
            continue;
        const auto key = PrivateKey::from_bytes(to_be32(secret).view());
        EXPECT_EQ(key.public_key().bytes, ec.public_key(arr32(secret)));
    }
}

TEST(keys, invalid_scalars_rejected)
{
    EXPECT_EQ(error_of([] { PrivateKey::from_bytes(bytes(32, 0)); }), Errc::invalid_private_key);
    EXPECT_EQ(error_of([] { PrivateKey::from_bytes(to_be32(secp256k1::group_order()).view()); }),
        Errc::invalid_private_key);
    EXPECT_EQ(error_of([] { PrivateKey::from_bytes(bytes(31, 1)); }), Errc::invalid_private_key);
}

TEST(keys, derive_address_rejects_points_off_curve)
{
    auto pub = key_of(0x46).public_key();
    pub.bytes[63] ^= 1;
    EXPECT_EQ(error_of([&] { derive_address(pub); }), Errc::point_not_on_curve);
}

namespace
{
/// Emits zeros first, then the order itself, then real entropy.
class OutOfRangeFirst final : public util::RandomSource
{
public:
    void fill(std::span<uint8_t> out) override
    {
        if (calls_ == 0)
            std::fill(out.begin(), out.end(), 0);
        else if (calls_ == 1)
        {
            const auto n = to_be32(secp256k1::group_order());
            std::copy(n.bytes.begin(), n.bytes.end(), out.begin());
        }
        else
            std::fill(out.begin(), out.end(), 0x11);
        ++calls_;
    }
    int calls_ = 0;
};
}  // namespace

TEST(keys, generate_keypair_redraws_out_of_range)
{
    OutOfRangeFirst src;
    const auto kp = generate_keypair(src);
    EXPECT_EQ(src.calls_, 3);
    EXPECT_EQ(kp.key, key_of(0x11));
    EXPECT_EQ(kp.address, derive_address(kp.key.public_key()));
}

TEST(keys, generate_keypair_distinct)
{
    SeededRandom a{1}, b{2};
    const auto k1 = generate_keypair(a), k2 = generate_keypair(b);
    EXPECT_NE(k1.address, k2.address);
    for (const auto* k : {&k1, &k2})
    {
        const auto d = from_be(k->key.secret().view());
        EXPECT_TRUE(d >= 1 && d < secp256k1::group_order());
    }
}

TEST(transaction, eip155_signing_hash)
{
    const auto tx = eip155_example();
    EXPECT_EQ(to_hex(signing_hash(tx)), "0xdaf5a779ae972f972197303d7b574746c7ef83eadac0f2791ad23db92e4c8e53");

    // independent preimage: oracle RLP + oracle keccak
    using namespace oracle;
    const auto preimage = rlp_encode(rlp_list({rlp_str(be_min(9)), rlp_str(be_min(20'000'000'000ULL)),
        rlp_str(be_min(21000)), rlp_str(std::string(20, '\x35')), rlp_str(be_min(1'000'000'000'000'000'000ULL)),
        rlp_str(""), rlp_str(be_min(1)), rlp_str(""), rlp_str("")}));
    EXPECT_EQ(to_hex_raw(signing_hash(tx).view()), keccak256_hex({preimage.begin(), preimage.end()}));

    auto other = tx;
    other.chain_id = 2;
    EXPECT_NE(signing_hash(other), signing_hash(tx));
}

TEST(transaction, eip155_signed_raw_matches_reference_signer)
{
    // eth_account.Account.sign_transaction with key 0x46..46 (RFC 6979 nonces)
    const auto raw = sign_transaction(eip155_example(), key_of(0x46));
    EXPECT_EQ(to_hex(raw),
        "0xf86c098504a817c800825208943535353535353535353535353535353535353535880de0b6b3a76400008025a028ef61340b"
        "d939bc2195fe537567866003e1a15d3c71ff63e1590620aa636276a067cbe9d8997f761aecb703304b3800ccf555c9f3dc6421"
        "4b297fb1966a3b6d83");
    const auto rec = recover_sender(raw);
    EXPECT_EQ(rec.signature.v, 37u);
    EXPECT_EQ(rec.sender, key_of(0x46).address());
    EXPECT_EQ(rec.tx, eip155_example());
}

TEST(transaction, creation_encodes_empty_recipient)
{
    LegacyTransaction tx;
    tx.gas_limit = 100000;
    tx.data = {0x60, 0x00};
    const auto raw = sign_transaction(tx, key_of(0x46));
    const auto fields = rlp::decode(raw).list();
    EXPECT_TRUE(fields[3].str().empty());
    EXPECT_FALSE(recover_sender(raw).tx.to.has_value());
}

TEST(transaction, sign_recover_property)
{
    oracle::OpenSslSecp256k1 ec;
    Gen g{155};
    const auto half = secp256k1::group_order() / 2;
    for (int i = 0; i < 100; ++i)
    {
        SeededRandom entropy{g.next()};
        const auto kp = generate_keypair(entropy);
        const auto tx = random_tx(g);
        const auto raw = sign_transaction(tx, kp.key);
        const auto rec = recover_sender(raw);
        ASSERT_EQ(rec.sender, kp.address);
        ASSERT_EQ(rec.tx, tx);
        ASSERT_LE(rec.signature.s, half);
        ASSERT_TRUE(rec.signature.v == tx.chain_id * 2 + 35 || rec.signature.v == tx.chain_id * 2 + 36);
        ASSERT_TRUE(ec.verify(signing_hash(tx).bytes, arr32(rec.signature.r), arr32(rec.signature.s),
            ec.public_key(kp.key.secret().bytes)));

        // flipping the recovery id recovers a different key
        const auto flipped = resign_fields(raw, other_parity(rec.signature.v, tx.chain_id), rec.signature.r, rec.signature.s);
        try
        {
            ASSERT_NE(recover_sender(flipped).sender, kp.address);
        }
        catch (const Error& e)
        {
            ASSERT_EQ(e.code(), Errc::bad_signature);
        }
    }
}

TEST(transaction, strict_rejections)
{
    const auto raw = sign_transaction(eip155_example(), key_of(0x46));
    const auto rec = recover_sender(raw);
    const auto& n = secp256k1::group_order();

    const auto high_s = resign_fields(raw, other_parity(rec.signature.v, 1), rec.signature.r, n - rec.signature.s);
    EXPECT_EQ(error_of([&] { recover_sender(high_s); }), Errc::high_s);

    EXPECT_EQ(error_of([&] { recover_sender(bytes_view{raw}.first(raw.size() - 3)); }), Errc::malformed_rlp);
    EXPECT_EQ(error_of([&] { recover_sender(from_hex("c0")); }), Errc::malformed_rlp);
    EXPECT_EQ(error_of([&] { recover_sender(resign_fields(raw, 27, rec.signature.r, rec.signature.s)); }),
        Errc::wrong_chain_id);
    EXPECT_EQ(error_of([&] { recover_sender(resign_fields(raw, 37, 0, rec.signature.s)); }), Errc::bad_signature);
    EXPECT_EQ(error_of([&] { recover_sender(resign_fields(raw, 37, n, rec.signature.s)); }), Errc::bad_signature);

    // non-minimal integer field
    auto fields = rlp::decode(raw).list();
    fields[0] = rlp::Item{bytes{0x00, 0x09}};
    EXPECT_EQ(error_of([&] { recover_sender(rlp::encode(rlp::Item{fields})); }), Errc::malformed_rlp);
}

TEST(transaction, invariants_checked_before_signing)
{
    auto tx = eip155_example();
    tx.chain_id = 0;
    EXPECT_EQ(error_of([&] { sign_transaction(tx, key_of(1)); }), Errc::invalid_argument);
    tx = eip155_example();
    tx.gas_limit = 0;
    EXPECT_EQ(error_of([&] { sign_transaction(tx, key_of(1)); }), Errc::invalid_argument);
    tx = eip155_example();
    tx.to.reset();
    EXPECT_EQ(error_of([&] { sign_transaction(tx, key_of(1)); }), Errc::invalid_argument);
}

TEST(keystore, round_trip_and_wrong_passphrase)
{
    SeededRandom entropy{9};
    const auto key = key_of(0x46);
    const auto ks = encrypt_key(key, "correct horse", entropy, 1024);
    EXPECT_EQ(decrypt_key(ks, "correct horse"), key);
    EXPECT_EQ(error_of([&] { decrypt_key(ks, "battery staple"); }), Errc::mac_mismatch);
    EXPECT_EQ(error_of([&] { encrypt_key(key, "", entropy, 1024); }), Errc::invalid_argument);

    const auto ks2 = encrypt_key(key, "correct horse", entropy, 1024);
    EXPECT_NE(ks.salt, ks2.salt);
    EXPECT_NE(ks.ciphertext, ks2.ciphertext);

    auto tampered = ks;
    tampered.ciphertext[0] ^= 1;
    EXPECT_EQ(error_of([&] { decrypt_key(tampered, "correct horse"); }), Errc::mac_mismatch);
}

TEST(keystore, json_round_trip)
{
    SeededRandom entropy{10};
    const auto key = key_of(0x22);
    const auto ks = encrypt_key(key, "pw", entropy, 512);
    const auto back = EncryptedKeystore::from_json(nlohmann::json::parse(ks.to_json().dump()));
    EXPECT_EQ(decrypt_key(back, "pw"), key);
    EXPECT_EQ(back.address, key.address());
    EXPECT_EQ(error_of([] { EncryptedKeystore::from_json(nlohmann::json::object()); }), Errc::malformed_keystore);
}

TEST(keystore, decrypts_reference_v3_keystore)
{
    // eth_account.Account.encrypt(0x46..46, "correct horse", kdf="pbkdf2", iterations=1024)
    const auto j = nlohmann::json::parse(R"({"address": "9d8A62f656a8d1615C1294fd71e9CFb3E4855A4F",
        "crypto": {"cipher": "aes-128-ctr", "cipherparams": {"iv": "c8426ea05c25f48767cce65fbf15559c"},
        "ciphertext": "a6293da3380469eadcebd56143db12613a1a7c05a63aae8c3b4e77c4c3b50a23", "kdf": "pbkdf2",
        "kdfparams": {"c": 1024, "dklen": 32, "prf": "hmac-sha256", "salt": "87be37aeda2f51e66e1b9711df2f18aa"},
        "mac": "ae4c744976a52f953e7fc082ebb3d0178420c5ad86caad882452455871ddf8f4"},
        "id": "171832e0-cce5-45f7-9f3a-785b725a2c89", "version": 3})");
    EXPECT_EQ(decrypt_key(EncryptedKeystore::from_json(j), "correct horse"), key_of(0x46));
}

TEST(keystore, never_contains_plaintext_key)
{
    Gen g{12};
    for (int i = 0; i < 20; ++i)
    {
        SeededRandom entropy{g.next()};
        const auto kp = generate_keypair(entropy);
        const auto text = encrypt_key(kp.key, "pass phrase", entropy, 64).to_json().dump();
        const std::string raw(kp.key.secret().bytes.begin(), kp.key.secret().bytes.end());
        EXPECT_EQ(text.find(raw), std::string::npos);
        EXPECT_EQ(text.find(to_hex_raw(kp.key.secret().view())), std::string::npos);
    }
}

TEST(keystore, default_kdf_is_slow_enough)
{
    SeededRandom entropy{13};
    const auto ks = encrypt_key(key_of(0x46), "pw", entropy);
    EXPECT_EQ(ks.iterations, default_kdf_iterations);
    const auto start = std::chrono::steady_clock::now();
    (void)decrypt_key(ks, "pw");
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_GE(elapsed, std::chrono::milliseconds{100});
}
