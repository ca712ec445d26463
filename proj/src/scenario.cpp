#include <algorithm>
#include <cstdio>

#include "omsent/run.hpp"

namespace omsent {

TraceSummary summarize(const EntanglementTrace& trace) {
    TraceSummary s;
    if (trace.empty()) return s;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].negativity > trace[peak].negativity) peak = i;
    }
    s.peak = trace[peak].negativity;
    s.peak_time = trace[peak].time;
    if (s.peak <= 0.0) return s;

    const double threshold = 0.5 * s.peak;
    auto is_local_max = [&](std::size_t i) {
        const double v = trace[i].negativity;
        const bool left = i == 0 || trace[i - 1].negativity < v;
        const bool right = i + 1 == trace.size() || trace[i + 1].negativity <= v;
        return left && right;
    };

    std::size_t first = peak;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].negativity >= threshold && is_local_max(i)) {
            first = i;
            break;
        }
    }
    s.first_peak = trace[first].negativity;
    s.first_peak_time = trace[first].time;

    s.trough = s.first_peak;
    for (std::size_t i = first + 1; i < trace.size(); ++i) {
        if (trace[i].negativity >= threshold && is_local_max(i)) break;
        s.trough = std::min(s.trough, trace[i].negativity);
    }
    return s;
}

std::string format_trace_csv(const ScenarioConfig& config, const EntanglementTrace& trace) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    std::string out = std::string("# omsent ") + kVersion + " config-hash=" + hash + "\n";
    out += "kappa_t,E_N,envelope,abs_D,m";
    if (config.covariance) out += ",V11,V12,V13,V14,V22,V23,V24,V33,V34,V44";
    out += "\n";
    for (const auto& p : trace) {
        out += format_real(p.time);
        for (double v : {p.negativity, p.envelope, p.abs_displacement, p.m}) {
            out += ",";
            out += format_real(v);
        }
        if (config.covariance) {
            for (int r = 0; r < 4; ++r) {
                for (int c = r; c < 4; ++c) {
                    out += ",";
                    out += format_real(p.V(r, c));
                }
            }
        }
        out += "\n";
    }
    return out;
}

RunResult run_scenario(const ScenarioConfig& config, unsigned workers) {
    const Simulation sim(to_scenario(config));
    RunResult result;
    result.trace = sim.trace(static_cast<std::size_t>(config.stride), workers);
    result.summary = summarize(result.trace);
    result.csv = format_trace_csv(config, result.trace);
    if (!config.csv.empty()) write_text_file(config.csv, result.csv);
    return result;
}

double peak_negativity(const ScenarioConfig& config, unsigned workers, bool check_resolution) {
    const Simulation sim(to_scenario(config, check_resolution));
    return summarize(sim.trace(1, workers)).peak;
}

}  // namespace omsent
