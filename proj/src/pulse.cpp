#include "omsent/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "omsent/errors.hpp"

namespace omsent {

namespace {

constexpr double kGaussianSupportSigmas = 6.0;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::string_view to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::gaussian: return "gaussian";
        case ShapeKind::square: return "square";
        case ShapeKind::triangle: return "triangle";
        case ShapeKind::sawtooth: return "sawtooth";
        case ShapeKind::trapezium: return "trapezium";
        case ShapeKind::sampled: return "sampled";
    }
    return "unknown";
}

ShapeKind shape_from_string(std::string_view name) {
    for (auto kind : {ShapeKind::gaussian, ShapeKind::square, ShapeKind::triangle,
                      ShapeKind::sawtooth, ShapeKind::trapezium, ShapeKind::sampled}) {
        if (to_string(kind) == name) return kind;
    }
    throw DomainError("unknown pulse shape '" + std::string(name) + "'");
}

Envelope Envelope::gaussian(double amplitude, double spectral_width, double center) {
    Envelope env;
    env.kind = ShapeKind::gaussian;
    env.amplitude = amplitude;
    env.width = spectral_width;
    env.center = center;
    env.validate();
    return env;
}

Envelope Envelope::piecewise(ShapeKind kind, double amplitude, double duration, double center,
                             double plateau_fraction) {
    if (kind == ShapeKind::gaussian || kind == ShapeKind::sampled) {
        throw DomainError("piecewise envelope requires square, triangle, sawtooth or trapezium");
    }
    Envelope env;
    env.kind = kind;
    env.amplitude = amplitude;
    env.width = duration;
    env.center = center;
    env.plateau_fraction = plateau_fraction;
    env.validate();
    return env;
}

Envelope Envelope::sampled_shape(std::vector<double> samples, double step, double center,
                                 double amplitude) {
    Envelope env;
    env.kind = ShapeKind::sampled;
    env.amplitude = amplitude;
    env.center = center;
    env.sample_step = step;
    env.width = samples.size() > 1 ? step * static_cast<double>(samples.size() - 1) : 0.0;
    env.samples = std::move(samples);
    env.validate();
    return env;
}

void Envelope::validate() const {
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
        throw DomainError("envelope amplitude must be finite and >= 0");
    }
    if (!finite_positive(width)) throw DomainError("envelope width must be finite and > 0");
    if (!std::isfinite(center)) throw DomainError("envelope center must be finite");
    if (kind == ShapeKind::trapezium &&
        !(plateau_fraction >= 0.0 && plateau_fraction <= 1.0)) {
        throw DomainError("trapezium plateau fraction must lie in [0, 1]");
    }
    if (kind == ShapeKind::sampled) {
        if (samples.size() < 2) throw DomainError("sampled envelope needs at least two samples");
        if (!finite_positive(sample_step)) throw DomainError("sample step must be > 0");
        for (double s : samples) {
            if (!std::isfinite(s) || s < 0.0) {
                throw DomainError("sampled envelope values must be finite and >= 0");
            }
        }
    }
}

std::pair<double, double> Envelope::support() const {
    const double half = kind == ShapeKind::gaussian ? kGaussianSupportSigmas / width : 0.5 * width;
    return {center - half, center + half};
}

std::vector<double> Envelope::breakpoints() const {
    std::vector<double> out;
    if (kind == ShapeKind::gaussian) return out;
    const double half = 0.5 * width;
    out.push_back(center - half);
    switch (kind) {
        case ShapeKind::triangle:
            out.push_back(center);
            break;
        case ShapeKind::trapezium: {
            const double plateau = 0.5 * plateau_fraction * width;
            out.push_back(center - plateau);
            out.push_back(center + plateau);
            break;
        }
        case ShapeKind::sampled:
            for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
                out.push_back(center - half + static_cast<double>(i) * sample_step);
            }
            break;
        default:
            break;
    }
    out.push_back(center + half);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void PulseTrain::validate() const {
    base.validate();
    if (count < 1) throw DomainError("pulse count must be >= 1");
    if (!std::isfinite(gap) || gap < 0.0) throw DomainError("pulse gap must be finite and >= 0");
}

Envelope PulseTrain::pulse(int j) const {
    Envelope env = base;
    env.center = base.center + j * gap;
    return env;
}

std::pair<double, double> PulseTrain::support() const {
    auto [lo, hi] = base.support();
    return {lo, hi + (count - 1) * gap};
}

std::vector<double> PulseTrain::breakpoints() const {
    std::vector<double> out;
    for (int j = 0; j < count; ++j) {
        for (double b : pulse(j).breakpoints()) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double envelope_value(const Envelope& env, double t) {
    if (!std::isfinite(t)) throw DomainError("envelope time must be finite");
    const double a = env.amplitude;
    if (env.kind == ShapeKind::gaussian) {
        const double x = env.width * (t - env.center);
        return a / (2.0 * std::numbers::pi) * std::exp(-0.5 * x * x);
    }

    const double half = 0.5 * env.width;
    const double u = t - env.center;  // offset from centre
    if (u < -half || u > half) return 0.0;

    switch (env.kind) {
        case ShapeKind::square:
            return a;
        case ShapeKind::triangle:
            return a * (1.0 - std::abs(u) / half);
        case ShapeKind::sawtooth:
            return a * (u + half) / env.width;
        case ShapeKind::trapezium: {
            const double plateau = 0.5 * env.plateau_fraction * env.width;
            if (std::abs(u) <= plateau) return a;
            return a * (half - std::abs(u)) / (half - plateau);
        }
        case ShapeKind::sampled: {
            const double pos = (u + half) / env.sample_step;
            const auto last = env.samples.size() - 1;
            const auto i = std::min(static_cast<std::size_t>(pos), last - 1);
            const double frac = std::clamp(pos - static_cast<double>(i), 0.0, 1.0);
            return a * ((1.0 - frac) * env.samples[i] + frac * env.samples[i + 1]);
        }
        case ShapeKind::gaussian:
            break;
    }
    return 0.0;
}

std::complex<double> train_drive(const PulseTrain& train, double tau, double detuning) {
    std::complex<double> sum{0.0, 0.0};
    for (int j = 0; j < train.count; ++j) {
        const double e = envelope_value(train.pulse(j), tau);
        if (e == 0.0) continue;
        sum += e * std::polar(1.0, detuning * (tau - j * train.gap));
    }
    return sum;
}

double train_envelope(const PulseTrain& train, double tau) {
    double sum = 0.0;
    for (int j = 0; j < train.count; ++j) sum += envelope_value(train.pulse(j), tau);
    return sum;
}

double pulse_energy(const Envelope& env) {
    const double a2 = env.amplitude * env.amplitude;
    const double T = env.width;
    switch (env.kind) {
        case ShapeKind::gaussian: {
            const double peak = env.amplitude / (2.0 * std::numbers::pi);
            return peak * peak * std::sqrt(std::numbers::pi) / env.width;
        }
        case ShapeKind::square:
            return a2 * T;
        case ShapeKind::triangle:
        case ShapeKind::sawtooth:
            return a2 * T / 3.0;
        case ShapeKind::trapezium: {
            const double f = env.plateau_fraction;
            return a2 * T * (f + (1.0 - f) / 3.0);
        }
        case ShapeKind::sampled: {
            // exact for the piecewise-linear interpolant
            double sum = 0.0;
            for (std::size_t i = 0; i + 1 < env.samples.size(); ++i) {
                const double p = env.samples[i];
                const double q = env.samples[i + 1];
                sum += (p * p + p * q + q * q) / 3.0;
            }
            return a2 * env.sample_step * sum;
        }
    }
    return 0.0;
}

Envelope with_energy(const Envelope& env, double energy) {
    if (!std::isfinite(energy) || energy < 0.0) throw DomainError("target energy must be >= 0");
    Envelope out = env;
    const double current = pulse_energy(env);
    if (current <= 0.0) throw DomainError("cannot rescale a zero-energy envelope");
    out.amplitude = env.amplitude * std::sqrt(energy / current);
    return out;
}

}  // namespace omsent
