#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "latbench/timebase.hpp"

namespace latbench {

/// SM clock frequency in MHz.
struct FrequencyMHz {
    int value = 0;
    auto operator<=>(const FrequencyMHz&) const = default;
};

struct DeviceSpec {
    int core_count = 1;
    std::set<FrequencyMHz> supported_frequencies;
    FrequencyMHz idle_frequency;
    std::int64_t timer_resolution_ns = 1000;
    std::string name;
    int index = 0;

    bool supports(FrequencyMHz f) const { return supported_frequencies.count(f) != 0; }
};

/// One timed workload iteration on one core. Timestamps are quantized to
/// the device timer resolution.
struct IterationRecord {
    int core_id = 0;
    DeviceInstant start;
    DeviceInstant end;

    std::int64_t duration_ns() const { return end.ns - start.ns; }
};

/// Per-core iteration records of one benchmark kernel. Every core holds
/// the same iteration count; records within a core are time-ordered and
/// non-overlapping.
struct KernelTrace {
    std::vector<std::vector<IterationRecord>> per_core;
    FrequencyMHz launch_frequency;

    std::size_t iterations_per_core() const {
        return per_core.empty() ? 0 : per_core.front().size();
    }
};

struct ThrottleStatus {
    bool thermal = false;
    bool power = false;
};

/// The accelerator surface the measurement protocol drives. The bundled
/// implementation is the simulator (SimDevice); a hardware backend would
/// implement the same calls against a real driver.
class Device {
public:
    virtual ~Device() = default;

    virtual const DeviceSpec& spec() const = 0;

    /// Requests a frequency change. The change is dispatched, not
    /// instantaneous: it takes effect after the device-specific switching
    /// latency. Throws UnsupportedFrequency.
    virtual void set_frequency(FrequencyMHz f) = 0;

    /// Starts the iterative workload on every core. Asynchronous: returns
    /// once the launch is dispatched. Throws LaunchFailed.
    virtual void launch_benchmark(std::int64_t iterations_per_core) = 0;

    /// Blocks until the in-flight launch (if any) has finished.
    virtual void wait_for_completion() = 0;

    /// Trace of the most recently completed launch.
    virtual const KernelTrace& trace() const = 0;

    virtual ThrottleStatus read_throttle_status() = 0;

    /// One four-timestamp host/device exchange.
    virtual TimestampExchange exchange_timestamps() = 0;

    virtual HostInstant host_now() = 0;
    virtual void host_sleep(std::int64_t ns) = 0;
};

std::string to_string(FrequencyMHz f);

}  // namespace latbench
