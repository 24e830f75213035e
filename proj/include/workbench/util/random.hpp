// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/codec/bytes.hpp>
#include <span>

namespace workbench::util
{
/// Entropy is injected so key generation and token minting stay testable.
class RandomSource
{
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<uint8_t> out) = 0;

    template <size_t N>
    FixedBytes<N> draw()
    {
        FixedBytes<N> r;
        fill(r.bytes);
        return r;
    }
};

/// OpenSSL CSPRNG.
class SystemRandom final : public RandomSource
{
public:
    void fill(std::span<uint8_t> out) override;
};
}  // namespace workbench::util
