// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

// Demo contract artifact and backend helpers shared by service-level tests.
#pragma once

#include <workbench/chain/backend.hpp>
#include <oracle/keccak_reference.hpp>
#include <oracle/rlp_reference.hpp>
#include <atomic>
#include <memory>

namespace testing_support
{
using namespace workbench;

/// One view getter and two nonpayable methods, plus a constructor.
inline constexpr std::string_view storage_abi = R"([
  {"type":"constructor","stateMutability":"nonpayable","inputs":[{"name":"initial","type":"uint256"}]},
  {"type":"function","name":"get","stateMutability":"view","inputs":[],
   "outputs":[{"name":"","type":"uint256"}]},
  {"type":"function","name":"set","stateMutability":"nonpayable",
   "inputs":[{"name":"x","type":"uint256"}],"outputs":[]},
  {"type":"function","name":"ping","stateMutability":"nonpayable","inputs":[],"outputs":[]},
  {"type":"event","name":"Changed","inputs":[{"name":"x","type":"uint256","indexed":false}]}
])";

inline constexpr std::string_view storage_bytecode = "0x6080604052348015600f57600080fd5b50603f80601d6000396000f3fe";

/// CREATE address computed with the test-only RLP and Keccak.
inline std::string oracle_create_address(const Address& sender, uint64_t nonce)
{
    const std::string s(sender.bytes.begin(), sender.bytes.end());
    const auto enc = oracle::rlp_encode(oracle::rlp_list({oracle::rlp_str(s), oracle::rlp_str(oracle::be_min(nonce))}));
    const auto h = oracle::keccak256_hex(std::vector<uint8_t>(enc.begin(), enc.end()));
    return "0x" + h.substr(24);
}

/// Forwards to another backend and counts every request.
class CountingBackend final : public chain::Backend
{
public:
    explicit CountingBackend(std::shared_ptr<chain::Backend> inner) : inner_{std::move(inner)} {}

    uint64_t get_chain_id() override { return ++requests, inner_->get_chain_id(); }
    uint64_t get_nonce(const Address& a) override { return ++requests, inner_->get_nonce(a); }
    Digest32 send_raw(bytes_view raw) override { return ++requests, inner_->send_raw(raw); }
    std::optional<chain::Receipt> get_receipt(const Digest32& h) override
    {
        return ++requests, inner_->get_receipt(h);
    }
    bytes call(const Address& to, bytes_view data) override { return ++requests, inner_->call(to, data); }
    uint64_t block_number() override { return ++requests, inner_->block_number(); }

    std::atomic<uint64_t> requests{0};

private:
    std::shared_ptr<chain::Backend> inner_;
};
}  // namespace testing_support
