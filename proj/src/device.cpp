#include "latbench/device.hpp"

namespace latbench {

std::string to_string(FrequencyMHz f) {
    return std::to_string(f.value) + "MHz";
}

}  // namespace latbench
