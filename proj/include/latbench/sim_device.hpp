#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "latbench/device.hpp"

namespace latbench {

struct LatencyComponent {
    double weight = 1.0;
    double mean_ns = 0.0;
    double sigma_ns = 0.0;
};

/// Weighted mixture of normal latency components; weights sum to 1.
struct LatencyMixture {
    std::vector<LatencyComponent> components;

    bool empty() const { return components.empty(); }
};

using TransitionKey = std::pair<FrequencyMHz, FrequencyMHz>;

/// Full parameterization of the simulated accelerator: the ground truth
/// the measurement pipeline is verified against.
struct SimScenario {
    DeviceSpec spec;
    std::int64_t work_cycles_per_iteration = 50'000;
    double noise_rel_sigma = 0.0;
    std::int64_t wakeup_latency = 0;  // ns
    std::map<TransitionKey, LatencyMixture> switch_latency_table;
    LatencyMixture default_switch_latency;  // used for transitions absent from the table
    std::int64_t transition_ramp = 0;       // ns; 0 = step change
    double outlier_probability = 0.0;
    double outlier_scale = 1.0;
    double thermal_throttle_probability = 0.0;
    std::vector<int> thermal_throttle_reads;  // 1-based throttle-read indices forced thermal
    std::set<TransitionKey> power_throttle_pairs;
    std::uint64_t rng_seed = 0;

    // Clock model between the virtual host and device timelines.
    std::int64_t clock_offset = 0;       // ns, device epoch minus host epoch
    std::int64_t sync_link_delay = 2500; // ns, one-way
    std::int64_t sync_jitter = 0;        // ns, uniform extra per link crossing

    // Frequencies that run at another frequency's throughput (for
    // aliased-pair scenarios). Keyed by commanded frequency.
    std::map<FrequencyMHz, FrequencyMHz> throughput_aliases;

    void validate() const;  // throws ScenarioError
};

/// Discrete-event simulated accelerator. All time is virtual: host_now()
/// advances only through the modeled call costs, sleeps and kernel waits,
/// so a full measurement session runs in milliseconds of real time.
/// Deterministic for a fixed scenario (including rng_seed).
class SimDevice final : public Device {
public:
    explicit SimDevice(SimScenario scenario);

    const DeviceSpec& spec() const override { return scenario_.spec; }
    void set_frequency(FrequencyMHz f) override;
    void launch_benchmark(std::int64_t iterations_per_core) override;
    void wait_for_completion() override;
    const KernelTrace& trace() const override { return trace_; }
    ThrottleStatus read_throttle_status() override;
    TimestampExchange exchange_timestamps() override;
    HostInstant host_now() override { return HostInstant{virtual_ns_}; }
    void host_sleep(std::int64_t ns) override;

    /// One planted frequency change, for ground-truth comparison in tests.
    struct PlantedSwitch {
        FrequencyMHz from;
        FrequencyMHz to;
        double commanded_at_device_ns = 0.0;
        double latency_ns = 0.0;  // effective at commanded_at + latency (+ ramp)
        bool outlier = false;
    };
    const std::vector<PlantedSwitch>& planted_switches() const { return planted_; }

    const SimScenario& scenario() const { return scenario_; }
    std::int64_t virtual_now_ns() const { return virtual_ns_; }

private:
    struct Transition {
        double start_ns = 0.0;  // device time at which the ramp begins
        double ramp_ns = 0.0;
        FrequencyMHz from;
        FrequencyMHz to;
    };

    struct PendingLaunch {
        double start_device_ns = 0.0;
        std::int64_t iterations_per_core = 0;
    };

    double commanded_frequency_at(double t_device_ns) const;
    double effective_frequency_at(double t_device_ns) const;
    double next_boundary_after(double t_device_ns) const;
    double advance_for_cycles(double t_device_ns, double cycles) const;
    double throughput_of(FrequencyMHz f) const;
    double sample_latency(const TransitionKey& key);
    std::int64_t quantize(double t_device_ns) const;

    SimScenario scenario_;
    std::int64_t virtual_ns_ = 0;  // host timeline
    FrequencyMHz commanded_;
    FrequencyMHz base_;  // frequency before the oldest retained transition
    std::vector<Transition> transitions_;
    std::vector<PlantedSwitch> planted_;
    bool woken_ = false;
    double wake_until_device_ns_ = 0.0;
    bool launch_in_flight_ = false;
    PendingLaunch pending_;
    KernelTrace trace_;
    TransitionKey last_transition_{};
    bool any_transition_ = false;
    std::int64_t throttle_reads_ = 0;

    std::mt19937_64 latency_rng_;
    std::mt19937_64 noise_rng_;
    std::mt19937_64 outlier_rng_;
    std::mt19937_64 throttle_rng_;
    std::mt19937_64 jitter_rng_;
};

}  // namespace latbench
