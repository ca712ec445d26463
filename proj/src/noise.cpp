#include "omsent/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "omsent/errors.hpp"

namespace omsent {

namespace {

double mechanical_weight(const SystemParams& params, const NoiseOptions& options) {
    if (!options.enabled) return 0.0;
    return 2.0 * params.occupancy + (options.vacuum ? 1.0 : 0.0);
}

double cavity_weight(const NoiseOptions& options) {
    // optical bath at zero occupancy: vacuum only
    return options.enabled && options.vacuum ? 1.0 : 0.0;
}

// sum_{k,l} rho^{|k-l|} phi_{max(k,l)} z_k z_l^T
Mat4 semiseparable_sum(const std::vector<Vec4>& z, double rho, const std::vector<double>& phi) {
    Mat4 acc = Mat4::Zero();
    Vec4 tail = Vec4::Zero();
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (k > 0) tail = rho * (tail + z[k - 1]);
        acc.noalias() += phi[k] * (z[k] * z[k].transpose() + z[k] * tail.transpose() +
                                   tail * z[k].transpose());
    }
    return acc;
}

void check_psd(const Mat4& v) {
    Eigen::SelfAdjointEigenSolver<Mat4> eig(v, Eigen::EigenvaluesOnly);
    const double lowest = eig.eigenvalues()(0);
    const double tol = 1e-10 * std::max(1.0, max_abs(v));
    if (!(lowest >= -tol)) {
        std::ostringstream msg;
        msg << "noise covariance not positive semidefinite (eigenvalue " << lowest << ")";
        throw IntegrityError(msg.str());
    }
}

double trapezoid_weight(std::size_t k, std::size_t j, double h) {
    return (k == 0 || k == j) ? 0.5 * h : h;
}

}  // namespace

Mat42 forcing_matrix(double tau, double t, std::complex<double> displacement,
                     const SystemParams& params) {
    const double amp = std::numbers::sqrt2 * params.coupling;
    const double cav = amp * std::exp(-0.5 * params.kappa * (t - tau));
    const double mech = amp * std::exp(-0.5 * params.gamma_m * (t - tau));
    const double c = std::cos(params.omega_m * tau);
    const double s = std::sin(params.omega_m * tau);
    Mat42 G;
    G << -cav * displacement.imag(), 0.0,
         cav * displacement.real(), 0.0,
         0.0, -mech * s,
         0.0, mech * c;
    return G;
}

double symmetrized_kernel(NoiseChannel a, NoiseChannel b, double tau, double tau_prime, double t,
                          const SystemParams& params, std::complex<double> d_tau,
                          std::complex<double> d_tau_prime, const NoiseOptions& options) {
    if (a != b) return 0.0;
    const double lo = std::min(tau, tau_prime);
    const double hi = std::max(tau, tau_prime);
    if (a == NoiseChannel::cavity) {
        const double w = cavity_weight(options);
        if (w == 0.0) return 0.0;
        return w * (std::conj(d_tau) * d_tau_prime).real() * memory_kernel(params.kappa, lo, hi, t);
    }
    return mechanical_weight(params, options) * std::cos(params.omega_m * (tau - tau_prime)) *
           memory_kernel(params.gamma_m, lo, hi, t);
}

Mat4 noise_covariance(const PropagatorFactors& factors, const ResponseTrace& trace,
                      const SystemParams& params, std::size_t j, const NoiseOptions& options) {
    const double wm = mechanical_weight(params, options);
    const double wc = cavity_weight(options);
    if (j == 0 || (wm == 0.0 && wc == 0.0)) return Mat4::Zero();

    const double h = factors.step();
    const double t = factors.time(j);
    const std::size_t n = j + 1;

    std::vector<Vec4> zm_cos(n), zm_sin(n), zc_re(n), zc_im(n);
    std::vector<double> phi_m(n), phi_c(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double tau = factors.time(k);
        const auto d = trace.values[k];
        const Mat42 Y = factors.propagator(j, k) * forcing_matrix(tau, t, d, params);
        const double w = trapezoid_weight(k, j, h);
        zm_cos[k] = w * std::cos(params.omega_m * tau) * Y.col(0);
        zm_sin[k] = w * std::sin(params.omega_m * tau) * Y.col(0);
        zc_re[k] = w * d.real() * Y.col(1);
        zc_im[k] = w * d.imag() * Y.col(1);
        phi_m[k] = -std::expm1(-params.gamma_m * (t - tau));
        phi_c[k] = -std::expm1(-params.kappa * (t - tau));
    }

    Mat4 v = Mat4::Zero();
    if (wm != 0.0) {
        const double rho = std::exp(-0.5 * params.gamma_m * h);
        v += wm * (semiseparable_sum(zm_cos, rho, phi_m) + semiseparable_sum(zm_sin, rho, phi_m));
    }
    if (wc != 0.0) {
        const double rho = std::exp(-0.5 * params.kappa * h);
        v += wc * (semiseparable_sum(zc_re, rho, phi_c) + semiseparable_sum(zc_im, rho, phi_c));
    }
    check_psd(v);
    return v;
}

Mat4 noise_covariance_direct(const PropagatorFactors& factors, const ResponseTrace& trace,
                             const SystemParams& params, std::size_t j,
                             const NoiseOptions& options) {
    if (j == 0) return Mat4::Zero();
    const double h = factors.step();
    const double t = factors.time(j);
    std::vector<Mat42> Y(j + 1);
    for (std::size_t k = 0; k <= j; ++k) {
        Y[k] = trapezoid_weight(k, j, h) * factors.propagator(j, k) *
               forcing_matrix(factors.time(k), t, trace.values[k], params);
    }
    // row blocks in ascending order
    constexpr std::size_t block = 64;
    Mat4 v = Mat4::Zero();
    for (std::size_t k0 = 0; k0 <= j; k0 += block) {
        Mat4 partial = Mat4::Zero();
        for (std::size_t k = k0; k < std::min(k0 + block, j + 1); ++k) {
            for (std::size_t l = 0; l <= j; ++l) {
                Eigen::Matrix2d C = Eigen::Matrix2d::Zero();
                const double tk = factors.time(k);
                const double tl = factors.time(l);
                C(0, 0) = symmetrized_kernel(NoiseChannel::mechanical, NoiseChannel::mechanical, tk,
                                             tl, t, params, trace.values[k], trace.values[l],
                                             options);
                C(1, 1) = symmetrized_kernel(NoiseChannel::cavity, NoiseChannel::cavity, tk, tl, t,
                                             params, trace.values[k], trace.values[l], options);
                partial.noalias() += Y[k] * C * Y[l].transpose();
            }
        }
        v += partial;
    }
    v = 0.5 * (v + v.transpose()).eval();
    check_psd(v);
    return v;
}

}  // namespace omsent
