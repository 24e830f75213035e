// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>

namespace workbench::util
{
/// Time source used for timestamps, session expiry and receipt polling.
class Clock
{
public:
    using duration = std::chrono::milliseconds;
    using time_point = std::chrono::time_point<std::chrono::system_clock, duration>;

    virtual ~Clock() = default;
    [[nodiscard]] virtual time_point now() const = 0;
    virtual void sleep_for(duration d) = 0;

    [[nodiscard]] int64_t unix_seconds() const
    {
        return std::chrono::duration_cast<std::chrono::seconds>(now().time_since_epoch()).count();
    }
};

class SystemClock final : public Clock
{
public:
    [[nodiscard]] time_point now() const override;
    void sleep_for(duration d) override;
};

/// Clock that only moves when told to; sleep_for advances it instantly.
class ManualClock final : public Clock
{
public:
    explicit ManualClock(time_point start = time_point{duration{1'700'000'000'000}}) noexcept
      : now_ms_{start.time_since_epoch().count()}
    {}

    [[nodiscard]] time_point now() const override { return time_point{duration{now_ms_.load()}}; }
    void sleep_for(duration d) override
    {
        now_ms_ += d.count();
        ++sleeps_;
    }
    void advance(duration d) noexcept { now_ms_ += d.count(); }
    [[nodiscard]] uint64_t sleeps() const noexcept { return sleeps_.load(); }

private:
    std::atomic<int64_t> now_ms_;
    std::atomic<uint64_t> sleeps_{0};
};
}  // namespace workbench::util
