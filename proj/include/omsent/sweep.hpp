#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "omsent/config.hpp"
#include "omsent/run.hpp"

namespace omsent {

struct SweepAxis {
    std::string path;                 // "section.key"
    std::vector<std::string> values;  // textual, applied with set_config_field
};

/// A scenario document plus a [sweep] section whose keys are config paths
/// and whose values are comma-separated lists, e.g.
///   [sweep]
///   system.detuning_over_omega_m = -1, -0.5, 0.5, 1
///   pulse.width_over_omega_m = 0.4, 0.8, 4/3, 4
///   max_points = 64
///   out_dir = sweep-out
struct SweepConfig {
    ScenarioConfig base;
    std::vector<SweepAxis> axes;
    std::size_t max_points = 256;
    std::string out_dir;
};

SweepConfig load_sweep(std::string_view text);
SweepConfig load_sweep_file(const std::string& path);

struct SweepPoint {
    std::vector<std::string> values;  // one per axis
    ScenarioConfig config;
    bool ok = false;
    std::string error;
    TraceSummary summary;
    EntanglementTrace trace;
    std::string csv;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // Cartesian order, last axis fastest
    std::string summary_csv;
};

/// Cartesian product of the axes applied to the base config.
std::vector<SweepPoint> expand_sweep(const SweepConfig& sweep);

/// Evaluates every point on up to `workers` threads. Per-point failures are
/// recorded in the point, not thrown. When out_dir is set, writes
/// point_<i>.csv for each successful point and summary.csv.
SweepResult run_sweep(const SweepConfig& sweep, unsigned workers = 1);

}  // namespace omsent
