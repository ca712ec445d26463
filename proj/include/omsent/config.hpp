#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omsent/entanglement.hpp"
#include "omsent/pulse.hpp"

namespace omsent {

/// Largest admissible omega_m * step: 40 samples per mechanical period.
inline constexpr double kMaxPhasePerStep = 2.0 * 3.14159265358979323846 / 40.0;
/// Default omega_m * step: 64 samples per mechanical period.
inline constexpr double kDefaultStepsPerPeriod = 64.0;
/// Time simulated after the last pulse has ended, in 1/kappa.
inline constexpr double kTrailingWindow = 20.0;

/// Scenario description as read from a config document. All times are in
/// 1/kappa and rates in kappa, except the fields named *_over_omega_m.
struct ScenarioConfig {
    // [system]
    double coupling = 1e-6;
    double omega_m = 2.5;
    double omega_m_over_gamma_m = 1e7;
    double detuning_over_omega_m = -1.0;
    double occupancy = 0.0;
    bool noise = true;
    bool vacuum_noise = true;

    // [pulse]
    ShapeKind shape = ShapeKind::gaussian;
    double amplitude = 0.0;  // set to the calibrated amplitude by default_config()
    double width_over_omega_m = 4.0;  // Gaussian spectral width
    double duration = 1.2;            // piecewise shapes
    std::optional<double> center;     // default: pulse support starts at t = 0
    double plateau_fraction = 0.5;
    int count = 1;
    double gap = 0.0;
    bool normalize_energy = false;
    std::vector<double> samples;
    double sample_step = 0.0;

    // [grid]
    std::optional<double> step;     // default: omega_m * step = 2 pi / 64
    std::optional<double> horizon;  // default: end of pulse support + trailing window
    int stride = 1;
    int quadrature_nodes = 8;

    // [output]
    std::string csv;
    std::string label;
    bool covariance = false;
    NegativityFormula negativity_formula = NegativityFormula::standard;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Defaults with the repository's calibrated drive amplitude.
ScenarioConfig default_config();

/// Parse a document with sections [system], [pulse], [grid], [output].
/// Unknown keys and sections, malformed values and invariant violations throw
/// ConfigError naming the key path and line.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig load_config_file(const std::string& path);

/// Canonical document; load_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Set one field from its textual value. `path` is "section.key".
void set_config_field(ScenarioConfig& config, std::string_view path, std::string_view value,
                      std::size_t line = 0);

/// Throws ConfigError on invariant violations. `check_resolution` enforces
/// omega_m * step <= 2 pi / 40.
void validate_config(const ScenarioConfig& config, bool check_resolution = true);

/// Resolve defaults and build the numerical scenario.
Scenario to_scenario(const ScenarioConfig& config, bool check_resolution = true);

PulseTrain build_train(const ScenarioConfig& config);

/// 64-bit FNV-1a of the canonical document with output paths and label
/// blanked, so the same physics hashes identically wherever it is written.
std::uint64_t config_hash(const ScenarioConfig& config);

/// Parse a real: decimal, exponent or a rational "a/b".
std::optional<double> parse_real(std::string_view text);

/// Shortest decimal that round-trips to the same double.
std::string format_real(double value);

std::string trim(std::string_view s);

}  // namespace omsent
