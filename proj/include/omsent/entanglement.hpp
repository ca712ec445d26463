#pragma once

#include <cstddef>
#include <vector>

#include "omsent/linalg.hpp"
#include "omsent/noise.hpp"
#include "omsent/propagator.hpp"
#include "omsent/pulse.hpp"
#include "omsent/response.hpp"

namespace omsent {

/// Covariance matrix of (x_c, p_c, x_m, p_m); vacuum variance 1/2.
struct CovarianceState {
    double time = 0.0;
    Mat4 V = Mat4::Identity() * 0.5;
    // det V evaluated in the frame pulled back by the symplectic propagator,
    // where it does not suffer the cancellation of a squeezed V.
    double det = 1.0 / 16.0;
    double det_scale = 1.0;  // Frobenius norm of the matrix det was taken of

    Eigen::Matrix2d cavity() const { return V.block<2, 2>(0, 0); }
    Eigen::Matrix2d mechanics() const { return V.block<2, 2>(2, 2); }
    Eigen::Matrix2d cross() const { return V.block<2, 2>(0, 2); }
};

enum class NegativityFormula {
    standard,  // eta^2 = (Sigma - sqrt(Sigma^2 - 4 det V)) / 2
    printed,   // same with det V in place of 4 det V; diagnostic only
};

/// Cavity vacuum times mechanical thermal state with occupancy n-bar.
CovarianceState initial_cm(double occupancy);

/// Smallest symplectic eigenvalue of the partially transposed state.
double partial_transpose_min_eigenvalue(const Mat4& V,
                                        NegativityFormula formula = NegativityFormula::standard);
/// As above with an externally supplied det V, taken of a matrix of
/// Frobenius norm `det_scale`.
double partial_transpose_min_eigenvalue(const Mat4& V, NegativityFormula formula, double det_v,
                                        double det_scale);

/// E_N = max(0, -ln 2 eta^-).
double log_negativity(const Mat4& V, NegativityFormula formula = NegativityFormula::standard);
double log_negativity(const CovarianceState& state,
                      NegativityFormula formula = NegativityFormula::standard);

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega. Non-negative
/// exactly when V is a valid quantum covariance matrix.
double physicality_margin(const Mat4& V);

struct Scenario {
    SystemParams params;
    PulseTrain train;
    Grid grid;
    NoiseOptions noise;
    NegativityFormula formula = NegativityFormula::standard;
    int quadrature_nodes = 8;
};

struct TracePoint {
    double time = 0.0;
    double negativity = 0.0;
    double envelope = 0.0;
    double abs_displacement = 0.0;
    double m = 0.0;  // K(t,0)^2 = m I
    Mat4 V = Mat4::Zero();
};

using EntanglementTrace = std::vector<TracePoint>;

/// Shared per-scenario structures: displacement trace and propagator prefix
/// arrays. Immutable after construction; evolve() may be called concurrently.
class Simulation {
public:
    explicit Simulation(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }
    const ResponseTrace& response() const { return response_; }
    const PropagatorFactors& factors() const { return factors_; }

    /// V(t_j) = Phi(t_j, 0) V(0) Phi^T(t_j, 0) + V_noise(t_j).
    CovarianceState evolve(std::size_t j) const;

    TracePoint point(std::size_t j) const;

    /// Every `stride`-th grid point (always including t = 0), evaluated on up
    /// to `workers` threads. Output order and values do not depend on
    /// `workers`.
    EntanglementTrace trace(std::size_t stride = 1, unsigned workers = 1) const;

private:
    Scenario scenario_;
    ResponseTrace response_;
    PropagatorFactors factors_;
    CovarianceState initial_;
};

}  // namespace omsent
