#include "omsent/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "omsent/errors.hpp"

namespace omsent {

CovarianceState initial_cm(double occupancy) {
    if (!std::isfinite(occupancy) || occupancy < 0.0) {
        throw DomainError("occupancy must be finite and >= 0");
    }
    CovarianceState state;
    state.time = 0.0;
    state.V = Vec4(0.5, 0.5, occupancy + 0.5, occupancy + 0.5).asDiagonal();
    state.det = state.V.determinant();
    state.det_scale = state.V.norm();
    return state;
}

namespace {

// Symplectic spectrum of V~ = T V T via the Hermitian matrix i L^T Omega L,
// L L^T = V~. Absolute error ~ eps ||V||, independent of det V.
double min_symplectic_eigenvalue_hermitian(const Mat4& V) {
    const Vec4 t(1.0, 1.0, 1.0, -1.0);
    const Mat4 vt = t.asDiagonal() * V * t.asDiagonal();
    Eigen::LLT<Mat4> llt(vt);
    if (llt.info() != Eigen::Success) {
        throw IntegrityError("covariance matrix is not positive definite");
    }
    const Mat4 L = llt.matrixL();
    const Mat4 a = L.transpose() * symplectic_form() * L;
    const Eigen::Matrix4cd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().minCoeff();
}

struct Eta {
    double value;
    double error;  // rounding error estimate of value
};

Eta min_eigenvalue_with_error(const Mat4& V, NegativityFormula formula, double det_v,
                              double det_scale) {
    const double det_a = V.block<2, 2>(0, 0).determinant();
    const double det_b = V.block<2, 2>(2, 2).determinant();
    const double det_c = V.block<2, 2>(0, 2).determinant();
    const double sigma = det_a + det_b - 2.0 * det_c;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double s2 = det_scale * det_scale;

    // For strongly squeezed, strongly mixed states det V is lost to rounding
    // (error ~ eps ||V||^4); the Sigma formula then resolves eta- worse than
    // the direct spectrum, which is used instead.
    if (formula == NegativityFormula::standard) {
        const double eta_h = min_symplectic_eigenvalue_hermitian(V);
        const double err_h = 16.0 * eps * V.norm();
        const double err_det = 16.0 * eps * s2 * s2 / (2.0 * std::max(sigma, 1e-300) *
                                                       std::max(eta_h, err_h));
        if (err_det > err_h) return {eta_h, err_h};
    }

    const double factor = formula == NegativityFormula::standard ? 4.0 : 1.0;
    double disc = sigma * sigma - factor * det_v;
    if (disc < 0.0) {
        if (disc < -1e-12 * std::max(1.0, sigma * sigma)) {
            std::ostringstream msg;
            msg << "covariance matrix is unphysical: Sigma^2 - " << factor
                << " det V = " << disc;
            throw IntegrityError(msg.str());
        }
        disc = 0.0;
    }
    // (Sigma - sqrt(disc)) / 2 rationalised against cancellation
    const double eta2 = factor * det_v / (2.0 * (sigma + std::sqrt(disc)));
    if (!(eta2 > 0.0)) {
        std::ostringstream msg;
        msg << "partially transposed symplectic eigenvalue is not positive (det V = " << det_v
            << ", Sigma = " << sigma << ")";
        throw IntegrityError(msg.str());
    }
    const double eta = std::sqrt(eta2);
    return {eta, 16.0 * eps * s2 * s2 / (2.0 * sigma * eta)};
}

// eta- within rounding of 1/2 is not resolved as entanglement
double negativity_from(Eta eta) {
    if (2.0 * (eta.value + eta.error) >= 1.0) return 0.0;
    return -std::log(2.0 * eta.value);
}

}  // namespace

double partial_transpose_min_eigenvalue(const Mat4& V, NegativityFormula formula) {
    return partial_transpose_min_eigenvalue(V, formula, V.determinant(), V.norm());
}

double partial_transpose_min_eigenvalue(const Mat4& V, NegativityFormula formula,
                                        double det_v, double det_scale) {
    return min_eigenvalue_with_error(V, formula, det_v, det_scale).value;
}

double log_negativity(const Mat4& V, NegativityFormula formula) {
    return negativity_from(min_eigenvalue_with_error(V, formula, V.determinant(), V.norm()));
}

double log_negativity(const CovarianceState& state, NegativityFormula formula) {
    return negativity_from(
        min_eigenvalue_with_error(state.V, formula, state.det, state.det_scale));
}

double physicality_margin(const Mat4& V) {
    const Eigen::Matrix4cd H =
        V.cast<std::complex<double>>() +
        std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(H, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      response_(displacement_trace(scenario_.train, scenario_.params, scenario_.grid,
                                   scenario_.quadrature_nodes)),
      factors_(response_, scenario_.params),
      initial_(initial_cm(scenario_.params.occupancy)) {}

CovarianceState Simulation::evolve(std::size_t j) const {
    CovarianceState state;
    state.time = factors_.time(j);
    const Mat4 phi = factors_.propagator(j, 0);
    state.V = phi * initial_.V * phi.transpose();
    state.det = initial_.det;
    state.det_scale = initial_.det_scale;
    if (scenario_.noise.enabled) {
        const Mat4 noise =
            noise_covariance(factors_, response_, scenario_.params, j, scenario_.noise);
        state.V += noise;
        // det(Phi (V0 + Phi^-1 N Phi^-T) Phi^T) with det Phi = 1
        const Mat4& omega = symplectic_form();
        const Mat4 phi_inv = -omega * phi.transpose() * omega;
        Mat4 pulled = initial_.V + phi_inv * noise * phi_inv.transpose();
        pulled = 0.5 * (pulled + pulled.transpose()).eval();
        state.det = pulled.determinant();
        state.det_scale = pulled.norm();
    }
    state.V = 0.5 * (state.V + state.V.transpose()).eval();
    return state;
}

TracePoint Simulation::point(std::size_t j) const {
    const CovarianceState state = evolve(j);
    TracePoint p;
    p.time = state.time;
    p.V = state.V;
    p.negativity = log_negativity(state, scenario_.formula);
    p.envelope = train_envelope(scenario_.train, state.time);
    p.abs_displacement = std::abs(response_.values[j]);
    p.m = factors_.generator(j, 0).m;
    return p;
}

EntanglementTrace Simulation::trace(std::size_t stride, unsigned workers) const {
    stride = std::max<std::size_t>(stride, 1);
    std::vector<std::size_t> indices;
    for (std::size_t j = 0; j < response_.size(); j += stride) indices.push_back(j);

    EntanglementTrace out(indices.size());
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(indices.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < indices.size(); ++i) out[i] = point(indices[i]);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < indices.size(); i = next++) {
            try {
                out[i] = point(indices[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = indices.size();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace omsent
