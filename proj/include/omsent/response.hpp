#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "omsent/pulse.hpp"

namespace omsent {

/// Physical constants in units of the cavity decay rate (kappa == 1).
struct SystemParams {
    double coupling = 1e-6;            // g
    double kappa = 1.0;
    double gamma_m = 2.5e-7;           // mechanical damping
    double omega_m = 2.5;
    double detuning = -2.5;            // Delta_0 = omega_c - omega_0
    double occupancy = 0.0;            // n-bar of bath and initial mechanical state

    void validate() const;
};

/// Uniform time grid tau_k = k * step, k = 0..intervals.
struct Grid {
    double step = 0.0;
    std::size_t intervals = 0;

    void validate() const;
    std::size_t size() const { return intervals + 1; }
    double time(std::size_t k) const { return static_cast<double>(k) * step; }
};

/// Classical cavity displacement D(tau_k) sampled on a grid.
struct ResponseTrace {
    double step = 0.0;
    std::vector<std::complex<double>> values;

    std::size_t size() const { return values.size(); }
    double time(std::size_t k) const { return static_cast<double>(k) * step; }
};

/// Gamma(t', tau) = exp(-r (tau - t')/2) - exp(-r (t - tau)/2) exp(-r (t - t')/2)
/// for 0 <= t' <= tau <= t.
double memory_kernel(double rate, double t_prime, double tau, double t);

/// Displacement on the grid from the exact one-step recurrence
///   D_{k+1} = exp(-kappa h/2) D_k + int_{tau_k}^{tau_{k+1}} drive(s) exp(-kappa (tau_{k+1} - s)/2) ds
/// with the local integral done by `nodes`-point Gauss-Legendre (1 <= nodes <= 8).
ResponseTrace displacement_trace(const PulseTrain& train, const SystemParams& params,
                                 const Grid& grid, int nodes = 8);

/// Displacement at an arbitrary time, extending the trace from the last grid
/// point at or before tau with the same local rule.
std::complex<double> displacement_at(const ResponseTrace& trace, const PulseTrain& train,
                                     const SystemParams& params, double tau, int nodes = 8);

/// Two-term displacement exactly as written with the final-time prefactor
/// and the cavity memory kernel, both integrals by adaptive Gauss-Kronrod.
/// Test oracle only. Throws IntegrityError when the quadrature misses
/// `rel_tol`.
std::complex<double> displacement_literal(const PulseTrain& train, const SystemParams& params,
                                          double t, double tau, double rel_tol = 1e-12);

}  // namespace omsent
