#include "latbench/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latbench/errors.hpp"

namespace latbench {

namespace {

using nlohmann::json;

FrequencyMHz parse_frequency(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<int>() <= 0) {
        throw ScenarioError(std::string(what) + " must be a positive integer MHz value");
    }
    return FrequencyMHz{j.get<int>()};
}

LatencyMixture parse_mixture(const json& j, const char* what) {
    LatencyMixture mixture;
    if (!j.contains("components") || !j["components"].is_array()) {
        throw ScenarioError(std::string(what) + " requires a components array");
    }
    for (const auto& c : j["components"]) {
        LatencyComponent component;
        component.weight = c.value("weight", 1.0);
        component.mean_ns = c.at("mean").get<double>();
        component.sigma_ns = c.value("sigma", 0.0);
        mixture.components.push_back(component);
    }
    return mixture;
}

DeviceSpec parse_spec(const json& j) {
    DeviceSpec spec;
    spec.core_count = j.at("core_count").get<int>();
    for (const auto& f : j.at("supported_frequencies")) {
        spec.supported_frequencies.insert(parse_frequency(f, "supported_frequencies entry"));
    }
    spec.idle_frequency = parse_frequency(j.at("idle_frequency"), "idle_frequency");
    spec.timer_resolution_ns = j.at("timer_resolution").get<std::int64_t>();
    spec.name = j.value("name", std::string("sim"));
    spec.index = j.value("index", 0);
    return spec;
}

SimScenario parse_device_block(const json& j) {
    SimScenario s;
    s.spec = parse_spec(j.at("spec"));
    s.work_cycles_per_iteration = j.at("work_cycles_per_iteration").get<std::int64_t>();
    s.noise_rel_sigma = j.value("noise_rel_sigma", 0.0);
    s.wakeup_latency = j.value("wakeup_latency", std::int64_t{0});
    s.transition_ramp = j.value("transition_ramp", std::int64_t{0});
    s.outlier_probability = j.value("outlier_probability", 0.0);
    s.outlier_scale = j.value("outlier_scale", 1.0);
    s.thermal_throttle_probability = j.value("thermal_throttle_probability", 0.0);
    if (j.contains("thermal_throttle_reads")) {
        for (const auto& r : j["thermal_throttle_reads"]) {
            s.thermal_throttle_reads.push_back(r.get<int>());
        }
    }
    s.rng_seed = j.value("rng_seed", std::uint64_t{0});
    s.clock_offset = j.value("clock_offset", std::int64_t{0});
    s.sync_link_delay = j.value("sync_link_delay", std::int64_t{2500});
    s.sync_jitter = j.value("sync_jitter", std::int64_t{0});
    if (j.contains("switch_latency_table")) {
        for (const auto& entry : j["switch_latency_table"]) {
            const TransitionKey key{parse_frequency(entry.at("init"), "switch_latency_table init"),
                                    parse_frequency(entry.at("target"), "switch_latency_table target")};
            s.switch_latency_table[key] = parse_mixture(entry, "switch_latency_table entry");
        }
    }
    if (j.contains("default_switch_latency")) {
        s.default_switch_latency = parse_mixture(j["default_switch_latency"], "default_switch_latency");
    }
    if (j.contains("power_throttle_pairs")) {
        for (const auto& entry : j["power_throttle_pairs"]) {
            s.power_throttle_pairs.insert({parse_frequency(entry.at("init"), "power_throttle_pairs init"),
                                           parse_frequency(entry.at("target"), "power_throttle_pairs target")});
        }
    }
    if (j.contains("throughput_aliases")) {
        for (const auto& entry : j["throughput_aliases"]) {
            s.throughput_aliases[parse_frequency(entry.at("freq"), "throughput_aliases freq")] =
                parse_frequency(entry.at("behaves_as"), "throughput_aliases behaves_as");
        }
    }
    s.validate();
    return s;
}

json parse_json_or_throw(const std::string& text, const std::string& origin) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw ScenarioError("malformed scenario JSON: " + origin);
    }
    return j;
}

const json& select_device_block(const json& j, int device_index) {
    if (j.contains("devices")) {
        const auto& devices = j["devices"];
        if (!devices.is_array() || devices.empty()) {
            throw ScenarioError("scenario devices list must be a non-empty array");
        }
        if (device_index < 0 || static_cast<std::size_t>(device_index) >= devices.size()) {
            throw ScenarioError("device index " + std::to_string(device_index) +
                                " out of range: scenario has " + std::to_string(devices.size()) +
                                " device block(s)");
        }
        return devices[static_cast<std::size_t>(device_index)];
    }
    if (device_index != 0) {
        throw ScenarioError("scenario has a single device block; only index 0 is valid");
    }
    return j;
}

}  // namespace

SimScenario parse_scenario(const std::string& json_text, int device_index) {
    try {
        const json j = parse_json_or_throw(json_text, "inline text");
        return parse_device_block(select_device_block(j, device_index));
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
}

SimScenario load_scenario(const std::filesystem::path& path, int device_index) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        const json j = parse_json_or_throw(buf.str(), path.string());
        return parse_device_block(select_device_block(j, device_index));
    } catch (const json::exception& e) {
        throw ScenarioError("scenario parse error in " + path.string() + ": " + e.what());
    }
}

int scenario_device_count(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const json j = parse_json_or_throw(buf.str(), path.string());
    if (j.contains("devices")) {
        return static_cast<int>(j["devices"].size());
    }
    return 1;
}

}  // namespace latbench
