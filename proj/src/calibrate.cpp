#include "omsent/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omsent/errors.hpp"
#include "omsent/run.hpp"

namespace omsent {

namespace {

void require_monotone(const std::vector<std::pair<double, double>>& evals) {
    for (std::size_t i = 1; i < evals.size(); ++i) {
        if (evals[i].second < evals[i - 1].second - 1e-12) {
            std::ostringstream msg;
            msg << "peak E_N is not monotone in the amplitude: E=" << evals[i - 1].first << " -> "
                << evals[i - 1].second << ", E=" << evals[i].first << " -> " << evals[i].second;
            throw IntegrityError(msg.str());
        }
    }
}

}  // namespace

CalibrationResult calibrate_amplitude(const ScenarioConfig& base, double target, double tolerance,
                                      unsigned workers, double start) {
    if (!(std::isfinite(target) && target > 0.0)) throw DomainError("calibration target must be > 0");
    if (!(tolerance > 0.0)) throw DomainError("calibration tolerance must be > 0");
    if (!(start > 0.0)) throw DomainError("calibration start amplitude must be > 0");

    CalibrationResult result;
    auto& evals = result.evaluations;
    auto peak_at = [&](double amplitude) {
        ScenarioConfig c = base;
        c.amplitude = amplitude;
        c.csv.clear();
        const double peak = peak_negativity(c, workers);
        evals.emplace_back(amplitude, peak);
        std::sort(evals.begin(), evals.end());
        require_monotone(evals);
        return peak;
    };
    auto done = [&](double amplitude, double peak) {
        result.amplitude = amplitude;
        result.achieved_peak = peak;
        return result;
    };

    constexpr double kFactor = 3.0;
    constexpr int kMaxBracketSteps = 40;
    double lo = start;
    double lo_peak = peak_at(lo);
    if (std::abs(lo_peak - target) <= tolerance) return done(lo, lo_peak);
    double hi = lo;
    double hi_peak = lo_peak;
    int steps = 0;
    if (lo_peak < target) {
        while (hi_peak < target) {
            if (++steps > kMaxBracketSteps) throw IntegrityError("calibration failed to bracket the target");
            lo = hi;
            lo_peak = hi_peak;
            hi = lo * kFactor;
            hi_peak = peak_at(hi);
        }
    } else {
        while (lo_peak > target) {
            if (++steps > kMaxBracketSteps) throw IntegrityError("calibration failed to bracket the target");
            hi = lo;
            hi_peak = lo_peak;
            lo = hi / kFactor;
            lo_peak = peak_at(lo);
        }
    }
    if (std::abs(hi_peak - target) <= tolerance) return done(hi, hi_peak);
    if (std::abs(lo_peak - target) <= tolerance) return done(lo, lo_peak);

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = std::sqrt(lo * hi);
        const double mid_peak = peak_at(mid);
        if (std::abs(mid_peak - target) <= tolerance) return done(mid, mid_peak);
        if (mid_peak < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi / lo - 1.0 < 1e-14) break;
    }
    throw IntegrityError("calibration bisection did not reach the tolerance");
}

}  // namespace omsent
