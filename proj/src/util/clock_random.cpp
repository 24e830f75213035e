// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/error.hpp>
#include <workbench/util/clock.hpp>
#include <workbench/util/random.hpp>
#include <openssl/rand.h>
#include <thread>

namespace workbench::util
{
Clock::time_point SystemClock::now() const
{
    return std::chrono::time_point_cast<duration>(std::chrono::system_clock::now());
}

void SystemClock::sleep_for(duration d)
{
    std::this_thread::sleep_for(d);
}

void SystemRandom::fill(std::span<uint8_t> out)
{
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
        throw Error{Errc::crypto_failure, "system random source failed"};
}
}  // namespace workbench::util
