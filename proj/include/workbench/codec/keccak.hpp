// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <array>
#include <string_view>

namespace workbench
{
/// Incremental Keccak-256 (rate 1088 bits, original 0x01 domain padding).
/// This is the Ethereum hash, not FIPS-202 SHA3-256.
class Keccak256
{
public:
    static constexpr size_t rate = 136;

    Keccak256& update(bytes_view data) noexcept;
    Keccak256& update(std::string_view text) noexcept;

    /// Pads, permutes and returns the digest. The hasher is reset afterwards.
    Digest32 finalize() noexcept;

private:
    std::array<uint64_t, 25> state_{};
    std::array<uint8_t, rate> buffer_{};
    size_t buffered_ = 0;

    void absorb_block(const uint8_t* block) noexcept;
};

Digest32 keccak256(bytes_view data) noexcept;
Digest32 keccak256(std::string_view text) noexcept;

/// The permutation itself, exposed for tests.
void keccakf1600(std::array<uint64_t, 25>& state) noexcept;
}  // namespace workbench
