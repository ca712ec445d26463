#pragma once

#include <string>
#include <utility>
#include <vector>

#include "omsent/config.hpp"

namespace omsent {

struct CalibrationResult {
    double amplitude = 0.0;
    double achieved_peak = 0.0;
    /// Every (amplitude, peak) evaluated, sorted by amplitude.
    std::vector<std::pair<double, double>> evaluations;
};

/// Find the drive amplitude at which the base scenario's peak E_N equals
/// `target` within `tolerance`. Geometric bracketing from `start`, then
/// bisection in log(amplitude). Throws DomainError for target <= 0 and
/// IntegrityError when no bracket is found or the response is not monotone.
CalibrationResult calibrate_amplitude(const ScenarioConfig& base, double target,
                                      double tolerance = 1e-3, unsigned workers = 1,
                                      double start = 1e6);

struct ConvergenceReport {
    std::vector<double> steps;   // h, h/2, h/4
    std::vector<double> peaks;
    std::vector<double> deltas;  // |peak(h/2^{i+1}) - peak(h/2^i)|
    double relative_delta = 0.0; // finest pair, relative to the finest peak
    double observed_order = 0.0; // log2(delta_0 / delta_1); 0 when undefined
    bool resolution_ok = true;   // omega_m * h <= 2 pi / 40
    bool passed = false;

    std::string to_text() const;
};

/// Step-halving study at h, h/2, h/4. Passes when the grid resolves the
/// mechanical period and the finest pair of peaks differ by < 0.5%.
ConvergenceReport convergence_report(const ScenarioConfig& config, unsigned workers = 1);

}  // namespace omsent
