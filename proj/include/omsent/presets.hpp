#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace omsent {

struct ScenarioConfig;

/// Drive amplitude E shared by every preset. Found with calibrate_amplitude
/// so that the fig1a (width 4) peak log-negativity is 1.5; see
/// `omsent calibrate --target 1.5`.
inline constexpr double kCalibratedAmplitude = 1.1716636e8;

/// Centre of the first pulse in every figure preset, in 1/kappa.
inline constexpr double kPresetCenter = 6.0;

/// Piecewise pulse duration used by the fig2 presets (estimate; the figure
/// only shows the shapes pictorially).
inline constexpr double kPiecewiseDuration = 1.2;

/// Gaussian width whose energy the fig2 piecewise pulses are normalised to.
inline constexpr double kPiecewiseReferenceWidth = 4.0 / 3.0;

/// Presets:
///   fig1a..fig1d[-w<W>]           Gaussian pulse, detuning/omega_m = -1, -0.5, 0.5, 1
///   fig2a, fig2b[-<shape>]        square|triangle|sawtooth|trapezium|gaussian, detuning -1 / +1
///   fig3-gap8, fig3-gap5[-w<W>]   two-pulse Gaussian train, detuning -1
///   fig4a..fig4d[-w<W>]           fig1 with occupancy 1e4
/// W is one of 0.4, 0.8, 4/3, 4 (fig3: 4/3, 4); the default is 4. fig2 defaults to square.
ScenarioConfig preset(std::string_view name);

std::vector<std::string> preset_names();

/// Widths in Fig. 1 order, as strings accepted in preset names.
const std::vector<std::string>& preset_widths();

}  // namespace omsent
