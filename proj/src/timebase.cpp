#include "latbench/timebase.hpp"

#include <limits>

#include "latbench/device.hpp"
#include "latbench/errors.hpp"

namespace latbench {

ExchangeEstimate estimate_from_exchange(std::int64_t t1, std::int64_t t2,
                                        std::int64_t t3, std::int64_t t4) {
    ExchangeEstimate e;
    e.offset_ns = ((t2 - t1) + (t3 - t4)) / 2;
    e.delay_ns = ((t4 - t1) - (t3 - t2)) / 2;
    return e;
}

ClockSync synchronize_clocks(Device& device, int rounds) {
    if (rounds < 1) {
        throw DeviceUnavailable("synchronize_clocks requires at least one round");
    }
    ClockSync best;
    std::int64_t best_rtt = std::numeric_limits<std::int64_t>::max();
    HostInstant last_host{std::numeric_limits<std::int64_t>::min()};
    DeviceInstant last_device{std::numeric_limits<std::int64_t>::min()};
    for (int i = 0; i < rounds; ++i) {
        const TimestampExchange ex = device.exchange_timestamps();
        if (ex.host_send < last_host || ex.host_receive < ex.host_send ||
            ex.device_reply < ex.device_receive || ex.device_receive < last_device) {
            throw NonMonotonicClock("timestamp regressed during clock synchronization");
        }
        last_host = ex.host_receive;
        last_device = ex.device_reply;
        const auto est = estimate_from_exchange(ex.host_send.ns, ex.device_receive.ns,
                                                ex.device_reply.ns, ex.host_receive.ns);
        const std::int64_t rtt =
            (ex.host_receive.ns - ex.host_send.ns) - (ex.device_reply.ns - ex.device_receive.ns);
        if (rtt < best_rtt) {
            best_rtt = rtt;
            best.offset_ns = est.offset_ns;
            best.path_delay_ns = est.delay_ns;
            best.taken_at = ex.host_send;
        }
    }
    // Conservative bound: one-way asymmetry plus device timer quantization.
    best.uncertainty_ns = best.path_delay_ns + device.spec().timer_resolution_ns;
    return best;
}

DeviceInstant host_to_device(HostInstant t, const ClockSync& sync) {
    return DeviceInstant{t.ns + sync.offset_ns};
}

HostInstant device_to_host(DeviceInstant t, const ClockSync& sync) {
    return HostInstant{t.ns - sync.offset_ns};
}

}  // namespace latbench
