#pragma once

#include <complex>

#include "omsent/linalg.hpp"
#include "omsent/propagator.hpp"
#include "omsent/response.hpp"

namespace omsent {

// Two scalar noise processes enter the linearised equations:
//   q_m = n_m e^{i w tau} + n_m^dag e^{-i w tau}   drives the cavity quadratures
//   q_c = n_c D^*  + n_c^dag D                     drives the mechanical quadratures
// Column 0 of the forcing matrix belongs to q_m, column 1 to q_c.
enum class NoiseChannel { mechanical = 0, cavity = 1 };

struct NoiseOptions {
    bool enabled = true;
    /// Include the zero-temperature (vacuum) part of both bath correlations.
    /// When false only the thermal excess 2 n-bar of the mechanical bath remains.
    bool vacuum = true;
};

/// 4x2 coupling of (q_m, q_c) into (x_c, p_c, x_m, p_m) at time tau for final time t.
Mat42 forcing_matrix(double tau, double t, std::complex<double> displacement,
                     const SystemParams& params);

/// Symmetrised correlation <{q_a(tau), q_b(tau')}>/2 of the channel processes.
/// Independent baths: zero when a != b.
double symmetrized_kernel(NoiseChannel a, NoiseChannel b, double tau, double tau_prime, double t,
                          const SystemParams& params, std::complex<double> d_tau,
                          std::complex<double> d_tau_prime, const NoiseOptions& options = {});

/// V_noise(t_j) = int int Phi(t,tau) G(tau) C(tau,tau') G^T(tau') Phi^T(t,tau') by the double
/// trapezoid rule over grid points 0..j. Uses the exponential (semiseparable)
/// structure of the memory kernels: O(j) per call. Throws IntegrityError when
/// the result is not positive semidefinite within tolerance.
Mat4 noise_covariance(const PropagatorFactors& factors, const ResponseTrace& trace,
                      const SystemParams& params, std::size_t j, const NoiseOptions& options = {});

/// The same double trapezoid sum evaluated term by term with the literal
/// memory kernel, O(j^2). Reference implementation for tests.
Mat4 noise_covariance_direct(const PropagatorFactors& factors, const ResponseTrace& trace,
                             const SystemParams& params, std::size_t j,
                             const NoiseOptions& options = {});

}  // namespace omsent
