#pragma once

#include <string>
#include <vector>

#include "omsent/config.hpp"
#include "omsent/entanglement.hpp"

namespace omsent {

inline constexpr const char* kVersion = "1.0.0";

struct TraceSummary {
    double peak = 0.0;
    double peak_time = 0.0;
    /// First local maximum reaching at least half of the global peak.
    double first_peak = 0.0;
    double first_peak_time = 0.0;
    /// Lowest E_N after the first peak, up to the next local maximum that
    /// reaches half of the global peak (or the end of the trace).
    double trough = 0.0;
};

TraceSummary summarize(const EntanglementTrace& trace);

struct RunResult {
    EntanglementTrace trace;
    TraceSummary summary;
    std::string csv;
};

/// Simulate `config` and format the CSV. Writes config.csv when non-empty;
/// I/O failures throw IoError with the path.
RunResult run_scenario(const ScenarioConfig& config, unsigned workers = 1);

/// Peak E_N only (stride 1), the quantity calibration and convergence use.
double peak_negativity(const ScenarioConfig& config, unsigned workers = 1,
                       bool check_resolution = true);

/// Header comment, header row, one row per trace point.
std::string format_trace_csv(const ScenarioConfig& config, const EntanglementTrace& trace);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws IoError when absent.
    std::size_t column(const std::string& name, const std::string& source) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source);
CsvTable read_csv_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace omsent
