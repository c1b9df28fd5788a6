#pragma once

#include <stdexcept>
#include <string>

namespace latbench {

struct DeviceUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonMonotonicClock : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedFrequency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LaunchFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientSamples : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroMean : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotEnoughClusters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CalibrationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoValidPairs : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AxisMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file; message names the file and line.
struct CsvParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace latbench
