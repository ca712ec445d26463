#include "omsent/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omsent/errors.hpp"

namespace omsent {

namespace {

constexpr double kSeriesThreshold = 1e-4;

Moments integrand(std::complex<double> d, double s, double two_g, double omega_m) {
    const double c = std::cos(omega_m * s);
    const double sn = std::sin(omega_m * s);
    return {two_g * d.real() * c, two_g * d.real() * sn, two_g * d.imag() * c,
            two_g * d.imag() * sn};
}

}  // namespace

PropagatorFactors::PropagatorFactors(const ResponseTrace& trace, const SystemParams& params)
    : step_(trace.step),
      rate_(0.5 * (params.kappa + params.gamma_m)),
      omega_m_(params.omega_m),
      coupling_(params.coupling),
      displacement_(trace.values) {
    const double two_g = 2.0 * params.coupling;
    const double decay = std::exp(-rate_ * step_);
    const double half = 0.5 * step_;
    scaled_.resize(trace.size());
    Moments prev_f = integrand(trace.values[0], 0.0, two_g, omega_m_);
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
        const Moments f = integrand(trace.values[k + 1], trace.time(k + 1), two_g, omega_m_);
        const Moments& s = scaled_[k];
        scaled_[k + 1] = {decay * s.rc + half * (decay * prev_f.rc + f.rc),
                          decay * s.rs + half * (decay * prev_f.rs + f.rs),
                          decay * s.ic + half * (decay * prev_f.ic + f.ic),
                          decay * s.is + half * (decay * prev_f.is + f.is)};
        prev_f = f;
    }
}

Moments PropagatorFactors::moments(std::size_t j, std::size_t k) const {
    if (k > j) throw DomainError("generator requires tau <= t");
    if (j >= scaled_.size()) throw DomainError("time beyond propagator coverage");
    const double w = std::exp(-rate_ * static_cast<double>(j - k) * step_);
    const Moments& a = scaled_[j];
    const Moments& b = scaled_[k];
    return {a.rc - w * b.rc, a.rs - w * b.rs, a.ic - w * b.ic, a.is - w * b.is};
}

Generator PropagatorFactors::generator(std::size_t j, std::size_t k) const {
    return integrated_generator(moments(j, k));
}

Mat4 PropagatorFactors::propagator(std::size_t j, std::size_t k) const {
    const Generator gen = generator(j, k);
    return propagator_exp(gen.K, gen.m);
}

double PropagatorFactors::commutator_diagnostic(std::size_t j, std::size_t stride) const {
    if (j >= scaled_.size()) throw DomainError("time beyond propagator coverage");
    stride = std::max<std::size_t>(stride, 1);
    SystemParams p;
    p.coupling = coupling_;
    p.kappa = 2.0 * rate_;
    p.gamma_m = 0.0;
    const double t = time(j);
    std::vector<Mat4> drift;
    for (std::size_t k = 0; k <= j; k += stride) {
        drift.push_back(
            drift_matrix(coupling_amplitude(t, time(k), displacement_[k], p), time(k), omega_m_));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < drift.size(); ++a) {
        for (std::size_t b = a + 1; b < drift.size(); ++b) {
            worst = std::max(worst, max_abs(drift[a] * drift[b] - drift[b] * drift[a]));
        }
    }
    return worst;
}

std::complex<double> coupling_amplitude(double t, double tau, std::complex<double> displacement,
                                        const SystemParams& params) {
    return 2.0 * params.coupling * std::exp(-0.5 * (params.kappa + params.gamma_m) * (t - tau)) *
           displacement;
}

Mat4 drift_matrix(std::complex<double> coupling, double tau, double omega_m) {
    const double R = coupling.real();
    const double I = coupling.imag();
    const double c = std::cos(omega_m * tau);
    const double s = std::sin(omega_m * tau);
    Mat4 M;
    M << 0.0, 0.0, -I * c, -I * s,
         0.0, 0.0, R * c, R * s,
         -R * s, -I * s, 0.0, 0.0,
         R * c, I * c, 0.0, 0.0;
    return M;
}

Generator integrated_generator(const Moments& mom) {
    Generator gen;
    gen.K << 0.0, 0.0, -mom.ic, -mom.is,
             0.0, 0.0, mom.rc, mom.rs,
             -mom.rs, -mom.is, 0.0, 0.0,
             mom.rc, mom.ic, 0.0, 0.0;
    gen.m = mom.ic * mom.rs - mom.is * mom.rc;
    return gen;
}

std::array<double, 2> cosh_sinhc(double m) {
    if (std::abs(m) < kSeriesThreshold) {
        // even power series in sqrt(m), through m^4
        const double ch = 1.0 + m / 2.0 * (1.0 + m / 12.0 * (1.0 + m / 30.0 * (1.0 + m / 56.0)));
        const double sh = 1.0 + m / 6.0 * (1.0 + m / 20.0 * (1.0 + m / 42.0 * (1.0 + m / 72.0)));
        return {ch, sh};
    }
    if (m > 0.0) {
        const double r = std::sqrt(m);
        return {std::cosh(r), std::sinh(r) / r};
    }
    const double r = std::sqrt(-m);
    return {std::cos(r), std::sin(r) / r};
}

Mat4 propagator_exp(const Mat4& K, double m) {
    const double scale = 1.0 + max_abs(K) * max_abs(K);
    const double defect = max_abs(K * K - m * Mat4::Identity());
    if (!(defect <= 1e-12 * scale)) {
        std::ostringstream msg;
        msg << "generator fails K^2 = m I (defect " << defect << ")";
        throw IntegrityError(msg.str());
    }
    const auto [ch, sh] = cosh_sinhc(m);
    return ch * Mat4::Identity() + sh * K;
}

}  // namespace omsent
