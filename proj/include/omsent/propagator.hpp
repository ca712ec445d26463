#pragma once

#include <array>
#include <complex>
#include <vector>

#include "omsent/linalg.hpp"
#include "omsent/response.hpp"

namespace omsent {

/// Cos/sin moments of the coupling amplitude P(t, s) = 2g exp(-(kappa+gamma_m)(t-s)/2) D(s)
/// integrated over an interval [tau, t]:
///   rc = int Re P cos(w s), rs = int Re P sin(w s),
///   ic = int Im P cos(w s), is = int Im P sin(w s).
struct Moments {
    double rc = 0.0;
    double rs = 0.0;
    double ic = 0.0;
    double is = 0.0;
};

struct Generator {
    Mat4 K;
    double m = 0.0;  // K * K == m * identity
};

/// Prefix structure that yields K(t_j, tau_k) in O(1) for any pair of grid
/// points. Stored scaled: S_k = exp(-a tau_k) * int_0^{tau_k} exp(a s) f(s) ds with
/// a = (kappa + gamma_m)/2, built by the trapezoid rule, so
///   moments(t_j, tau_k) = S_j - exp(-a (t_j - tau_k)) S_k
/// equals the prefix-sum difference scaled by exp(-a t_j).
class PropagatorFactors {
public:
    PropagatorFactors(const ResponseTrace& trace, const SystemParams& params);

    std::size_t size() const { return scaled_.size(); }
    double step() const { return step_; }
    double time(std::size_t k) const { return static_cast<double>(k) * step_; }

    /// Moments over [tau_k, t_j]; requires k <= j.
    Moments moments(std::size_t j, std::size_t k) const;

    Generator generator(std::size_t j, std::size_t k) const;
    Mat4 propagator(std::size_t j, std::size_t k) const;

    /// max over grid pairs s1 < s2 <= t_j of ||[M(t_j, s1), M(t_j, s2)]||_max,
    /// scanned on a stride. Reports how far the drift matrices are from
    /// commuting, which the closed-form exponential assumes.
    double commutator_diagnostic(std::size_t j, std::size_t stride = 1) const;

private:
    double step_;
    double rate_;  // (kappa + gamma_m)/2
    double omega_m_;
    double coupling_;
    std::vector<std::complex<double>> displacement_;
    std::vector<Moments> scaled_;
};

/// P(t, tau) = 2g exp(-(kappa + gamma_m)(t - tau)/2) D(tau).
std::complex<double> coupling_amplitude(double t, double tau, std::complex<double> displacement,
                                        const SystemParams& params);

/// Drift matrix of the linearised Heisenberg equations at time tau.
Mat4 drift_matrix(std::complex<double> coupling, double tau, double omega_m);

/// K = int M ds assembled from the four moments; m = ic*rs - is*rc.
Generator integrated_generator(const Moments& mom);

/// cosh(sqrt m) I + sinh(sqrt m)/sqrt(m) K, both factors evaluated as entire
/// functions of m. Throws IntegrityError when K^2 != m I.
Mat4 propagator_exp(const Mat4& K, double m);

/// cosh(sqrt m) and sinh(sqrt m)/sqrt m for any real m.
std::array<double, 2> cosh_sinhc(double m);

}  // namespace omsent
