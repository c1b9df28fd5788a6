#pragma once

#include <compare>
#include <cstdint>

namespace latbench {

class Device;

/// Nanoseconds since an arbitrary host epoch.
struct HostInstant {
    std::int64_t ns = 0;
    auto operator<=>(const HostInstant&) const = default;
};

/// Nanoseconds since an arbitrary device epoch, quantized to the device
/// timer resolution.
struct DeviceInstant {
    std::int64_t ns = 0;
    auto operator<=>(const DeviceInstant&) const = default;
};

/// One four-timestamp exchange: host-send, device-receive, device-reply,
/// host-receive.
struct TimestampExchange {
    HostInstant host_send;
    DeviceInstant device_receive;
    DeviceInstant device_reply;
    HostInstant host_receive;
};

/// Estimated relationship between the two clocks. offset is device epoch
/// minus host epoch.
struct ClockSync {
    std::int64_t offset_ns = 0;
    std::int64_t path_delay_ns = 0;
    std::int64_t uncertainty_ns = 0;
    HostInstant taken_at;
};

/// Offset/delay of a single exchange:
///   offset = ((t2 - t1) + (t3 - t4)) / 2
///   delay  = ((t4 - t1) - (t3 - t2)) / 2
struct ExchangeEstimate {
    std::int64_t offset_ns = 0;
    std::int64_t delay_ns = 0;
};
ExchangeEstimate estimate_from_exchange(std::int64_t t1, std::int64_t t2,
                                        std::int64_t t3, std::int64_t t4);

/// Runs `rounds` timestamp exchanges against an idle device and keeps the
/// estimate from the minimum round-trip round. Throws DeviceUnavailable
/// if an exchange fails, NonMonotonicClock if any timestamp regresses.
ClockSync synchronize_clocks(Device& device, int rounds = 64);

DeviceInstant host_to_device(HostInstant t, const ClockSync& sync);
HostInstant device_to_host(DeviceInstant t, const ClockSync& sync);

}  // namespace latbench
