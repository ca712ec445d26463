#include <cmath>
#include <numbers>
#include <sstream>

#include "omsent/calibrate.hpp"
#include "omsent/run.hpp"

namespace omsent {

ConvergenceReport convergence_report(const ScenarioConfig& config, unsigned workers) {
    ConvergenceReport report;
    const double h = config.step ? *config.step
                                 : 2.0 * std::numbers::pi / (kDefaultStepsPerPeriod * config.omega_m);
    report.resolution_ok = h * config.omega_m <= kMaxPhasePerStep * (1.0 + 1e-12);

    // Hold the horizon fixed across refinements.
    const Scenario coarse = to_scenario(config, false);
    const double horizon = coarse.grid.step * static_cast<double>(coarse.grid.intervals);

    for (int level = 0; level < 3; ++level) {
        ScenarioConfig c = config;
        c.csv.clear();
        c.step = h / std::pow(2.0, level);
        c.horizon = horizon;
        report.steps.push_back(*c.step);
        report.peaks.push_back(peak_negativity(c, workers, false));
    }
    for (std::size_t i = 0; i + 1 < report.peaks.size(); ++i) {
        report.deltas.push_back(std::abs(report.peaks[i + 1] - report.peaks[i]));
    }
    const double finest = report.peaks.back();
    report.relative_delta = finest > 0.0 ? report.deltas.back() / finest : report.deltas.back();
    if (report.deltas[0] > 0.0 && report.deltas[1] > 0.0) {
        report.observed_order = std::log2(report.deltas[0] / report.deltas[1]);
    }
    report.passed = report.resolution_ok && report.relative_delta < 5e-3;
    return report;
}

std::string ConvergenceReport::to_text() const {
    std::ostringstream out;
    out.precision(10);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        out << "step " << steps[i] << "  peak_E_N " << peaks[i] << "\n";
    }
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        out << "delta[" << i << "] " << deltas[i] << "\n";
    }
    out << "relative_delta " << relative_delta << "\n";
    out << "observed_order " << observed_order << "\n";
    out << "resolution " << (resolution_ok ? "ok" : "insufficient (omega_m * step > 2 pi / 40)")
        << "\n";
    out << (passed ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace omsent
