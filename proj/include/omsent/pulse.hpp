#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace omsent {

enum class ShapeKind { gaussian, square, triangle, sawtooth, trapezium, sampled };

std::string_view to_string(ShapeKind kind);
ShapeKind shape_from_string(std::string_view name);

// Pulse envelope. Times are in 1/kappa and rates in kappa.
//
// `width` is the spectral width Delta-omega (absolute, kappa units) for the
// Gaussian, E/(2 pi) exp(-dw^2 (t - c)^2 / 2), and the full duration T_p for
// every other shape. Piecewise shapes occupy [c - T_p/2, c + T_p/2]:
//   square     constant amplitude
//   triangle   isoceles, peak at c
//   sawtooth   linear rise 0 -> amplitude over T_p, then drop to 0
//   trapezium  linear ramps around a centred plateau of plateau_fraction * T_p
//   sampled    linear interpolation of `samples`, spaced `sample_step`
struct Envelope {
    ShapeKind kind = ShapeKind::gaussian;
    double amplitude = 0.0;
    double width = 1.0;
    double center = 0.0;
    double plateau_fraction = 0.5;
    std::vector<double> samples;
    double sample_step = 0.0;

    static Envelope gaussian(double amplitude, double spectral_width, double center);
    static Envelope piecewise(ShapeKind kind, double amplitude, double duration, double center,
                              double plateau_fraction = 0.5);
    static Envelope sampled_shape(std::vector<double> samples, double step, double center,
                                  double amplitude = 1.0);

    /// Throws DomainError when the invariants do not hold.
    void validate() const;

    /// Points where the envelope or its slope jumps, ascending (empty for
    /// the Gaussian).
    std::vector<double> breakpoints() const;

    /// Time interval outside of which the envelope is zero (piecewise) or
    /// below exp(-18) of its peak (Gaussian, six standard deviations).
    std::pair<double, double> support() const;
};

struct PulseTrain {
    Envelope base;
    int count = 1;
    double gap = 0.0;  // centre-to-centre spacing t0

    void validate() const;

    /// Pulse j: the base envelope re-centred at base.center + j * gap.
    Envelope pulse(int j) const;
    std::pair<double, double> support() const;
    /// Breakpoints of every pulse, ascending and de-duplicated.
    std::vector<double> breakpoints() const;
};

double envelope_value(const Envelope& env, double t);

/// Sum_j E_j(tau) exp(i detuning (tau - j t0)).
std::complex<double> train_drive(const PulseTrain& train, double tau, double detuning);

/// Sum_j E_j(tau), the real envelope without the carrier phase.
double train_envelope(const PulseTrain& train, double tau);

/// Integral of envelope^2 over all time, in closed form for every shape.
double pulse_energy(const Envelope& env);

/// Copy of `env` with amplitude rescaled so that pulse_energy equals `energy`.
Envelope with_energy(const Envelope& env, double energy);

}  // namespace omsent
