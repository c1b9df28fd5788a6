#pragma once

#include <filesystem>
#include <string>

#include "latbench/sim_device.hpp"

namespace latbench {

/// Loads one device block from a scenario file. A file holds either a
/// single scenario object or {"devices": [...]} with one block per
/// simulated hardware instance; device_index selects the block.
/// Throws ScenarioError on parse or validation failure.
SimScenario load_scenario(const std::filesystem::path& path, int device_index = 0);

SimScenario parse_scenario(const std::string& json_text, int device_index = 0);

/// Number of device blocks in a scenario file.
int scenario_device_count(const std::filesystem::path& path);

}  // namespace latbench
