// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <oracle/keccak_reference.hpp>
#include <oracle/rlp_reference.hpp>
#include <support/generators.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/codec/rlp.hpp>
#include <workbench/error.hpp>
#include <gtest/gtest.h>

using namespace workbench;
using testing_support::Gen;

namespace
{
bytes pattern(size_t n)
{
    bytes b(n);
    for (size_t i = 0; i < n; ++i)
        b[i] = static_cast<uint8_t>(i * 7 + 3);
    return b;
}

Errc decode_error(const bytes& in)
{
    try
    {
        rlp::decode(in);
    }
    catch (const Error& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "decode succeeded for " << to_hex(in);
    return Errc::invalid_argument;
}

bytes as_bytes(const std::string& s)
{
    return {s.begin(), s.end()};
}
}  // namespace

// Digests of pattern(n) computed with pycryptodome's keccak (digest_bits=256).
TEST(keccak, reference_vectors)
{
    const std::pair<size_t, const char*> vectors[] = {
        {0, "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"},
        {1, "69c322e3248a5dfc29d73c5b0553b0185a35cd5bb6386747517ef7e53b15e287"},
        {2, "3b8194e0262a1713bd119866e92437201534cd3894e1b8ac6695c3735cbda009"},
        {31, "8522dc30be01c01348c0591309ac2948c9ae4ce02facbb745f85a5297286d3dd"},
        {32, "04d1b47ed3b04c5ff6a0280293cb2ab55bd297c9c2e0c3449831b419285d7df2"},
        {55, "152cc5298108a3ec3a26e0c5aead9c2770c184a6bdf87eb087716b185c8e2238"},
        {56, "515efa1a7d43f655443dff20ec3f7e75e2af9ec2415ca813d21d0918a0e70fa2"},
        {64, "0251cf13aa5b18f1cbda7cddbe85f3dc536fc93df590c2d20ca9b28af1ed2c39"},
        {100, "07f50a4b887c7ce8aae9a0ce97e51b886b9a8c0e92e0192a841ea5b37fc8edd8"},
        {135, "00ef96af9cf4b24c7f269d922294444a197d0a33638c2e56634c57e892103a8f"},
        {136, "742061bcad767ed4c4f5883b1dcb1aad11afdcc140dc469d953759b127b9f9ed"},
        {137, "e3371f61e770abf254c34239c3b0099ad90594507415bc81dd0a10b9692bbf2a"},
        {200, "66d2cdf3ab4c5bd3c75add9b60b14ac5b7789534fa2da3f348853b847359a3a0"},
        {271, "4401c4afbe16ff911bdbf2d38e556e5b861f3fdf0f9d4306b1c46f6ae4f73584"},
        {272, "ac141fd7b0a0ffcd2e967254d508da3ec616596493c36fa304425647d90e6de5"},
        {273, "16192ea86793083e47731cb3c970600f04768414d92bc0540e54ce8607a0fce0"},
    };
    for (const auto& [len, expected] : vectors)
    {
        EXPECT_EQ(to_hex_raw(keccak256(pattern(len)).view()), expected) << "length " << len;
        EXPECT_EQ(oracle::keccak256_hex(pattern(len)), expected) << "oracle, length " << len;
    }
    EXPECT_EQ(to_hex_raw(keccak256(std::string_view{"abc"}).view()),
        "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
}

TEST(keccak, agrees_with_reference_on_random_inputs)
{
    Gen g{11};
    for (int i = 0; i < 200; ++i)
    {
        const auto data = g.blob(600);
        EXPECT_EQ(to_hex_raw(keccak256(data).view()), oracle::keccak256_hex(data));
    }
}

TEST(keccak, incremental_updates_match_one_shot)
{
    const auto data = pattern(1000);
    for (const size_t chunk : {1, 7, 135, 136, 137, 500})
    {
        Keccak256 h;
        for (size_t off = 0; off < data.size(); off += chunk)
            h.update(bytes_view{data}.subspan(off, std::min(chunk, data.size() - off)));
        EXPECT_EQ(h.finalize(), keccak256(data)) << "chunk " << chunk;
    }
}

TEST(keccak, deterministic_and_fixed_length)
{
    const auto data = pattern(200);
    EXPECT_EQ(keccak256(data), keccak256(data));
    EXPECT_EQ(keccak256(data).view().size(), 32u);
}

TEST(rlp, canonical_examples)
{
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item{bytes{}})), "0x80");
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item{rlp::Item::List{}})), "0xc0");
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item::string("dog"))), "0x83646f67");
    const rlp::Item cat_dog{rlp::Item::List{rlp::Item::string("cat"), rlp::Item::string("dog")}};
    EXPECT_EQ(to_hex(rlp::encode(cat_dog)), "0xc88363617483646f67");
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item::string(bytes{0x00}))), "0x00");
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item::string(bytes{0x80}))), "0x8180");
}

TEST(rlp, long_forms_match_oracle)
{
    for (const size_t len : {55u, 56u, 255u, 256u, 70000u})
    {
        const std::string s(len, 'a');
        EXPECT_EQ(rlp::encode(rlp::Item::string(s)), as_bytes(oracle::rlp_encode(oracle::rlp_str(s))))
            << len;
        std::vector<oracle::RlpNode> items(len, oracle::rlp_str("b"));
        rlp::Item::List ours(len, rlp::Item::string("b"));
        EXPECT_EQ(rlp::encode(rlp::Item{ours}), as_bytes(oracle::rlp_encode(oracle::rlp_list(items))))
            << len;
    }
}

TEST(rlp, decode_examples)
{
    EXPECT_EQ(rlp::decode(bytes{0x80}), rlp::Item{bytes{}});
    const auto list = rlp::decode(from_hex("c88363617483646f67"));
    ASSERT_TRUE(list.is_list());
    ASSERT_EQ(list.list().size(), 2u);
    EXPECT_EQ(list.list()[0], rlp::Item::string("cat"));
    EXPECT_EQ(list.list()[1], rlp::Item::string("dog"));
}

TEST(rlp, strict_decoder_rejects_non_canonical)
{
    EXPECT_EQ(decode_error(from_hex("8100")), Errc::non_canonical);
    EXPECT_EQ(decode_error(from_hex("817f")), Errc::non_canonical);
    // long form for a 3-byte string
    EXPECT_EQ(decode_error(from_hex("b803646f67")), Errc::non_canonical);
    // length-of-length with a leading zero
    bytes padded = from_hex("b90038");
    padded.resize(3 + 56, 'a');
    EXPECT_EQ(decode_error(padded), Errc::non_canonical);
    EXPECT_EQ(decode_error(from_hex("f803c0c0c0")), Errc::non_canonical);
}

TEST(rlp, strict_decoder_rejects_truncation_and_trailing)
{
    EXPECT_EQ(decode_error({}), Errc::truncated_input);
    EXPECT_EQ(decode_error(from_hex("83646f")), Errc::truncated_input);
    EXPECT_EQ(decode_error(from_hex("c883636174")), Errc::truncated_input);
    EXPECT_EQ(decode_error(from_hex("b9")), Errc::truncated_input);
    EXPECT_EQ(decode_error(from_hex("8080")), Errc::trailing_bytes);
    // inner item claims more than the list payload holds
    EXPECT_EQ(decode_error(from_hex("c2836364")), Errc::truncated_input);
}

TEST(rlp, payload_limit)
{
    EXPECT_EQ(decode_error(from_hex("bb01000001")), Errc::payload_too_large);
    EXPECT_EQ(decode_error(from_hex("bf0100000000000000")), Errc::payload_too_large);
    bytes big(rlp::max_payload + 1);
    EXPECT_THROW(rlp::encode(rlp::Item{big}), Error);
    bytes at_limit(rlp::max_payload);
    EXPECT_NO_THROW(rlp::decode(rlp::encode(rlp::Item{at_limit})));
}

TEST(rlp, nesting_limit)
{
    bytes deep(rlp::max_depth + 1, 0xc0);
    // each level wraps the next; build from the inside out
    rlp::Item item{rlp::Item::List{}};
    for (size_t i = 0; i < rlp::max_depth + 1; ++i)
        item = rlp::Item{rlp::Item::List{item}};
    EXPECT_EQ(decode_error(rlp::encode(item)), Errc::payload_too_large);
}

TEST(rlp, round_trip_property)
{
    Gen g{2024};
    for (int i = 0; i < 500; ++i)
    {
        const auto item = g.rlp_item(4);
        const auto enc = rlp::encode(item);
        ASSERT_EQ(rlp::decode(enc), item);
    }
}

TEST(rlp, every_strict_prefix_is_truncated)
{
    Gen g{99};
    for (int i = 0; i < 60; ++i)
    {
        const auto enc = rlp::encode(g.rlp_item(3));
        const auto step = std::max<size_t>(1, enc.size() / 64);
        for (size_t n = 0; n < enc.size(); n += step)
            ASSERT_EQ(decode_error(bytes(enc.begin(), enc.begin() + static_cast<ptrdiff_t>(n))),
                Errc::truncated_input)
                << "prefix " << n << " of " << enc.size();
    }
}

TEST(rlp, integer_items)
{
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item::uint(0))), "0x80");
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item::uint(15))), "0x0f");
    EXPECT_EQ(to_hex(rlp::encode(rlp::Item::uint(1024))), "0x820400");
    EXPECT_EQ(rlp::decode(from_hex("820400")).to_uint(), 1024);
    EXPECT_THROW((void)rlp::Item(bytes{0x00, 0x01}).to_uint(), Error);
}

TEST(minimal_be, examples)
{
    EXPECT_TRUE(int_to_minimal_be(0).empty());
    EXPECT_EQ(int_to_minimal_be(1024), (bytes{0x04, 0x00}));
    EXPECT_EQ(int_to_minimal_be(127), (bytes{0x7f}));
    const uint256 max = ~uint256{0};
    EXPECT_EQ(int_to_minimal_be(max), bytes(32, 0xff));
}

TEST(minimal_be, round_trip_property)
{
    Gen g{5};
    for (int i = 0; i < 2000; ++i)
    {
        const auto n = g.u256();
        const auto enc = int_to_minimal_be(n);
        ASSERT_TRUE(enc.empty() || enc[0] != 0);
        ASSERT_EQ(minimal_be_to_int(enc), n);
    }
}

TEST(hex, parse_and_format)
{
    EXPECT_EQ(from_hex("0xDeadBeef"), (bytes{0xde, 0xad, 0xbe, 0xef}));
    EXPECT_EQ(from_hex("deadbeef"), (bytes{0xde, 0xad, 0xbe, 0xef}));
    EXPECT_EQ(to_hex(bytes{0xAB}), "0xab");
    EXPECT_THROW(from_hex("0xabc"), Error);
    EXPECT_THROW(from_hex("0xzz"), Error);
    EXPECT_THROW(fixed_from_hex<20>("0x1234"), Error);
}

TEST(hex, quantities)
{
    EXPECT_EQ(to_quantity(0), "0x0");
    EXPECT_EQ(to_quantity(1024), "0x400");
    EXPECT_EQ(to_quantity(1337), "0x539");
    EXPECT_EQ(from_quantity("0x539"), 1337);
    EXPECT_EQ(from_quantity("0x0"), 0);
    EXPECT_THROW(from_quantity("539"), Error);
    EXPECT_THROW(from_quantity("0x"), Error);
    EXPECT_THROW(from_quantity("0x01"), Error);
    EXPECT_THROW(from_quantity("0x00"), Error);
}
