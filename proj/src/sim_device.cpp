#include "latbench/sim_device.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latbench/errors.hpp"

namespace latbench {

namespace {

// Host-side cost of issuing one driver call, on the virtual clock.
constexpr std::int64_t kDispatchCostNs = 500;
constexpr std::int64_t kThrottleReadCostNs = 200;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// MHz -> cycles per nanosecond.
double rate_of(double freq_mhz) {
    return freq_mhz * 1e-3;
}

}  // namespace

void SimScenario::validate() const {
    if (spec.core_count < 1) {
        throw ScenarioError("core_count must be positive");
    }
    if (spec.timer_resolution_ns <= 0) {
        throw ScenarioError("timer_resolution must be positive");
    }
    if (spec.supported_frequencies.empty()) {
        throw ScenarioError("supported_frequencies must be non-empty");
    }
    if (!spec.supports(spec.idle_frequency)) {
        throw ScenarioError("idle_frequency must be in supported_frequencies");
    }
    if (work_cycles_per_iteration <= 0) {
        throw ScenarioError("work_cycles_per_iteration must be positive");
    }
    if (noise_rel_sigma < 0.0) {
        throw ScenarioError("noise_rel_sigma must be >= 0");
    }
    if (wakeup_latency < 0 || transition_ramp < 0) {
        throw ScenarioError("latencies must be >= 0");
    }
    if (outlier_probability < 0.0 || outlier_probability >= 1.0) {
        throw ScenarioError("outlier_probability must be in [0,1)");
    }
    if (outlier_probability > 0.0 && outlier_scale <= 1.0) {
        throw ScenarioError("outlier_scale must be > 1 when outliers are enabled");
    }
    if (thermal_throttle_probability < 0.0 || thermal_throttle_probability > 1.0) {
        throw ScenarioError("thermal_throttle_probability must be in [0,1]");
    }
    if (sync_link_delay < 0 || sync_jitter < 0) {
        throw ScenarioError("sync link parameters must be >= 0");
    }
    auto check_mixture = [](const LatencyMixture& m, const char* what) {
        double total = 0.0;
        for (const auto& c : m.components) {
            if (c.sigma_ns < 0.0 || c.mean_ns < 0.0 || c.weight <= 0.0) {
                throw ScenarioError(std::string(what) + ": invalid mixture component");
            }
            total += c.weight;
        }
        if (!m.components.empty() && std::abs(total - 1.0) > 1e-9) {
            throw ScenarioError(std::string(what) + ": mixture weights must sum to 1");
        }
    };
    check_mixture(default_switch_latency, "default_switch_latency");
    for (const auto& [key, mixture] : switch_latency_table) {
        if (!spec.supports(key.first) || !spec.supports(key.second)) {
            throw ScenarioError("switch_latency_table references unsupported frequency");
        }
        if (mixture.empty()) {
            throw ScenarioError("switch_latency_table entry has no components");
        }
        check_mixture(mixture, "switch_latency_table");
    }
    for (const auto& [freq, behaves_as] : throughput_aliases) {
        if (!spec.supports(freq) || !spec.supports(behaves_as)) {
            throw ScenarioError("throughput_aliases references unsupported frequency");
        }
    }
}

SimDevice::SimDevice(SimScenario scenario)
    : scenario_(std::move(scenario)),
      commanded_(scenario_.spec.idle_frequency),
      base_(scenario_.spec.idle_frequency),
      latency_rng_(scenario_.rng_seed ^ 0x9e3779b97f4a7c15ull),
      noise_rng_(scenario_.rng_seed ^ 0xc2b2ae3d27d4eb4full),
      outlier_rng_(scenario_.rng_seed ^ 0x165667b19e3779f9ull),
      throttle_rng_(scenario_.rng_seed ^ 0x27d4eb2f165667c5ull),
      jitter_rng_(scenario_.rng_seed ^ 0x85ebca6b2e4bf179ull) {
    scenario_.validate();
}

double SimDevice::throughput_of(FrequencyMHz f) const {
    auto alias = scenario_.throughput_aliases.find(f);
    if (alias != scenario_.throughput_aliases.end()) {
        f = alias->second;
    }
    return static_cast<double>(f.value);
}

double SimDevice::commanded_frequency_at(double t) const {
    // Transitions are kept sorted by start time; each one ramps from its
    // predecessor's target.
    double current = throughput_of(base_);
    for (const auto& tr : transitions_) {
        if (t < tr.start_ns) {
            break;
        }
        const double f_from = throughput_of(tr.from);
        const double f_to = throughput_of(tr.to);
        if (tr.ramp_ns <= 0.0 || t >= tr.start_ns + tr.ramp_ns) {
            current = f_to;
        } else {
            const double progress = (t - tr.start_ns) / tr.ramp_ns;
            current = f_from + (f_to - f_from) * progress;
        }
    }
    return current;
}

double SimDevice::effective_frequency_at(double t) const {
    if (t < wake_until_device_ns_) {
        return throughput_of(scenario_.spec.idle_frequency);
    }
    return commanded_frequency_at(t);
}

double SimDevice::next_boundary_after(double t) const {
    double next = kInfinity;
    auto consider = [&](double b) {
        if (b > t && b < next) {
            next = b;
        }
    };
    consider(wake_until_device_ns_);
    for (const auto& tr : transitions_) {
        consider(tr.start_ns);
        if (tr.ramp_ns > 0.0) {
            consider(tr.start_ns + tr.ramp_ns);
        }
    }
    return next;
}

double SimDevice::advance_for_cycles(double t, double cycles) const {
    double remaining = cycles;
    while (remaining > 0.0) {
        const double boundary = next_boundary_after(t);
        const double f0 = effective_frequency_at(t);
        if (boundary == kInfinity) {
            return t + remaining / rate_of(f0);
        }
        // Frequency is linear (possibly constant) on [t, boundary); recover
        // the slope from the midpoint to avoid sampling at the boundary.
        const double span = boundary - t;
        const double f_mid = effective_frequency_at(t + span / 2.0);
        const double slope = 2.0 * (f_mid - f0) / span;
        if (std::abs(slope) < 1e-15) {
            const double capacity = span * rate_of(f0);
            if (remaining <= capacity) {
                return t + remaining / rate_of(f0);
            }
            remaining -= capacity;
        } else {
            // cycles(tau) = 1e-3 * (f0*tau + slope*tau^2/2)
            const double capacity = 1e-3 * (f0 * span + slope * span * span / 2.0);
            if (remaining <= capacity) {
                const double a = slope / 2.0;
                const double b = f0;
                const double c = -remaining * 1e3;
                const double disc = std::max(0.0, b * b - 4.0 * a * c);
                double tau = (-b + std::sqrt(disc)) / (2.0 * a);
                if (!(tau > 0.0) || tau > span) {
                    tau = std::clamp(tau, 0.0, span);
                }
                return t + tau;
            }
            remaining -= capacity;
        }
        t = boundary;
    }
    return t;
}

std::int64_t SimDevice::quantize(double t) const {
    const auto res = static_cast<double>(scenario_.spec.timer_resolution_ns);
    return static_cast<std::int64_t>(std::floor(t / res)) * scenario_.spec.timer_resolution_ns;
}

double SimDevice::sample_latency(const TransitionKey& key) {
    const LatencyMixture* mixture = &scenario_.default_switch_latency;
    auto it = scenario_.switch_latency_table.find(key);
    if (it != scenario_.switch_latency_table.end()) {
        mixture = &it->second;
    }
    if (mixture->empty()) {
        return 0.0;
    }
    double pick = std::uniform_real_distribution<double>(0.0, 1.0)(latency_rng_);
    const LatencyComponent* chosen = &mixture->components.back();
    for (const auto& c : mixture->components) {
        if (pick <= c.weight) {
            chosen = &c;
            break;
        }
        pick -= c.weight;
    }
    double latency = chosen->mean_ns;
    if (chosen->sigma_ns > 0.0) {
        latency = std::normal_distribution<double>(chosen->mean_ns, chosen->sigma_ns)(latency_rng_);
    }
    return std::max(0.0, latency);
}

void SimDevice::set_frequency(FrequencyMHz f) {
    if (!scenario_.spec.supports(f)) {
        throw UnsupportedFrequency("frequency " + to_string(f) + " not supported by " +
                                   scenario_.spec.name);
    }
    if (f == commanded_) {
        virtual_ns_ += kDispatchCostNs;
        return;
    }
    const double commanded_at = static_cast<double>(virtual_ns_ + scenario_.clock_offset);
    // A new request supersedes queued changes that have not begun yet.
    while (!transitions_.empty() && transitions_.back().start_ns > commanded_at) {
        transitions_.pop_back();
    }
    const FrequencyMHz from = transitions_.empty() ? base_ : transitions_.back().to;
    double latency = sample_latency({from, f});
    bool outlier = false;
    if (scenario_.outlier_probability > 0.0) {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(outlier_rng_);
        if (u < scenario_.outlier_probability) {
            latency *= scenario_.outlier_scale;
            outlier = true;
        }
    }
    transitions_.push_back(Transition{commanded_at + latency,
                                      static_cast<double>(scenario_.transition_ramp), from, f});
    planted_.push_back(PlantedSwitch{from, f, commanded_at, latency, outlier});
    commanded_ = f;
    last_transition_ = {from, f};
    any_transition_ = true;
    virtual_ns_ += kDispatchCostNs;
}

void SimDevice::launch_benchmark(std::int64_t iterations_per_core) {
    if (iterations_per_core <= 0) {
        throw LaunchFailed("iterations_per_core must be positive");
    }
    if (launch_in_flight_) {
        throw LaunchFailed("a benchmark launch is already in flight");
    }
    const double start_device =
        static_cast<double>(virtual_ns_ + scenario_.sync_link_delay + scenario_.clock_offset);
    // Transitions settled before this launch can no longer influence any
    // trace; fold them into the base frequency.
    while (!transitions_.empty()) {
        const Transition& tr = transitions_.front();
        if (tr.start_ns + tr.ramp_ns <= start_device) {
            base_ = tr.to;
            transitions_.erase(transitions_.begin());
        } else {
            break;
        }
    }
    if (!woken_) {
        wake_until_device_ns_ = start_device + static_cast<double>(scenario_.wakeup_latency);
        woken_ = true;
    }
    pending_ = PendingLaunch{start_device, iterations_per_core};
    launch_in_flight_ = true;
    virtual_ns_ += kDispatchCostNs;
}

void SimDevice::wait_for_completion() {
    if (!launch_in_flight_) {
        return;
    }
    const double work = static_cast<double>(scenario_.work_cycles_per_iteration);
    KernelTrace trace;
    trace.launch_frequency = commanded_;
    trace.per_core.resize(static_cast<std::size_t>(scenario_.spec.core_count));
    std::normal_distribution<double> noise(0.0, scenario_.noise_rel_sigma);
    double kernel_end = pending_.start_device_ns;
    for (int core = 0; core < scenario_.spec.core_count; ++core) {
        auto& records = trace.per_core[static_cast<std::size_t>(core)];
        records.reserve(static_cast<std::size_t>(pending_.iterations_per_core));
        double t = pending_.start_device_ns;
        for (std::int64_t i = 0; i < pending_.iterations_per_core; ++i) {
            const double ideal_end = advance_for_cycles(t, work);
            double duration = ideal_end - t;
            if (scenario_.noise_rel_sigma > 0.0) {
                duration *= 1.0 + std::max(-0.9, noise(noise_rng_));
            }
            const double end = t + duration;
            records.push_back(IterationRecord{core, DeviceInstant{quantize(t)},
                                              DeviceInstant{quantize(end)}});
            t = end;
        }
        kernel_end = std::max(kernel_end, t);
    }
    trace_ = std::move(trace);
    launch_in_flight_ = false;
    const std::int64_t host_end = static_cast<std::int64_t>(kernel_end) - scenario_.clock_offset +
                                  scenario_.sync_link_delay;
    virtual_ns_ = std::max(virtual_ns_, host_end);
}

ThrottleStatus SimDevice::read_throttle_status() {
    ++throttle_reads_;
    virtual_ns_ += kThrottleReadCostNs;
    ThrottleStatus status;
    const auto& forced = scenario_.thermal_throttle_reads;
    if (std::find(forced.begin(), forced.end(), throttle_reads_) != forced.end()) {
        status.thermal = true;
    } else if (scenario_.thermal_throttle_probability > 0.0) {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(throttle_rng_);
        status.thermal = u < scenario_.thermal_throttle_probability;
    }
    if (any_transition_ && scenario_.power_throttle_pairs.count(last_transition_) != 0) {
        status.power = true;
    }
    return status;
}

TimestampExchange SimDevice::exchange_timestamps() {
    auto link_crossing = [&]() {
        std::int64_t delay = scenario_.sync_link_delay;
        if (scenario_.sync_jitter > 0) {
            delay += std::uniform_int_distribution<std::int64_t>(0, scenario_.sync_jitter)(jitter_rng_);
        }
        return delay;
    };
    TimestampExchange ex;
    ex.host_send = HostInstant{virtual_ns_};
    const std::int64_t d1 = link_crossing();
    const std::int64_t receive_host = virtual_ns_ + d1;
    ex.device_receive = DeviceInstant{quantize(static_cast<double>(receive_host + scenario_.clock_offset))};
    const std::int64_t reply_host = receive_host + scenario_.spec.timer_resolution_ns;
    ex.device_reply = DeviceInstant{quantize(static_cast<double>(reply_host + scenario_.clock_offset))};
    const std::int64_t d2 = link_crossing();
    virtual_ns_ = reply_host + d2;
    ex.host_receive = HostInstant{virtual_ns_};
    return ex;
}

void SimDevice::host_sleep(std::int64_t ns) {
    if (ns > 0) {
        virtual_ns_ += ns;
    }
}

}  // namespace latbench
