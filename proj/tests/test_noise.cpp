#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "omsent/config.hpp"
#include "omsent/noise.hpp"
#include "omsent/presets.hpp"
#include "oracles.hpp"

using namespace omsent;

namespace {

struct Fixture {
    Scenario s;
    ResponseTrace tr;
    PropagatorFactors f;

    explicit Fixture(Scenario sc)
        : s(std::move(sc)),
          tr(displacement_trace(s.train, s.params, s.grid)),
          f(tr, s.params) {}
};

Scenario small_scenario(double coupling = 1e-6, double occupancy = 0.0) {
    ScenarioConfig c = preset("fig1a");
    c.coupling = coupling;
    c.occupancy = occupancy;
    return to_scenario(c);
}

// Literal double trapezoid with kernels written out from their definitions.
Mat4 brute_force(const Fixture& x, std::size_t j, bool vacuum = true) {
    const auto& p = x.s.params;
    const double h = x.f.step();
    const double t = x.f.time(j);
    auto gamma = [&](double rate, double a, double b) {
        const double lo = std::min(a, b), hi = std::max(a, b);
        return std::exp(-rate * (hi - lo) / 2.0) -
               std::exp(-rate * (t - hi) / 2.0) * std::exp(-rate * (t - lo) / 2.0);
    };
    const double sq2g = std::sqrt(2.0) * p.coupling;
    std::vector<Eigen::Matrix<double, 4, 2>> y(j + 1);
    for (std::size_t k = 0; k <= j; ++k) {
        const double tau = x.f.time(k);
        const auto d = x.tr.values[k];
        Eigen::Matrix<double, 4, 2> g = Eigen::Matrix<double, 4, 2>::Zero();
        const double ec = std::exp(-p.kappa * (t - tau) / 2.0);
        const double em = std::exp(-p.gamma_m * (t - tau) / 2.0);
        g(0, 0) = -sq2g * ec * d.imag();
        g(1, 0) = sq2g * ec * d.real();
        g(2, 1) = -sq2g * em * std::sin(p.omega_m * tau);
        g(3, 1) = sq2g * em * std::cos(p.omega_m * tau);
        const double w = (k == 0 || k == j) ? h / 2.0 : h;
        y[k] = w * x.f.propagator(j, k) * g;
    }
    const double nm = 2.0 * p.occupancy + (vacuum ? 1.0 : 0.0);
    const double nc = vacuum ? 1.0 : 0.0;
    Mat4 v = Mat4::Zero();
    for (std::size_t k = 0; k <= j; ++k) {
        for (std::size_t l = 0; l <= j; ++l) {
            const double tk = x.f.time(k), tl = x.f.time(l);
            Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
            c(0, 0) = nm * std::cos(p.omega_m * (tk - tl)) * gamma(p.gamma_m, tk, tl);
            c(1, 1) = nc * (std::conj(x.tr.values[k]) * x.tr.values[l]).real() *
                      gamma(p.kappa, tk, tl);
            v += y[k] * c * y[l].transpose();
        }
    }
    return v;
}

double min_eig(const Mat4& m) {
    return Eigen::SelfAdjointEigenSolver<Mat4>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST_CASE("forcing matrix") {
    SystemParams p;
    const Mat42 z = forcing_matrix(1.0, 3.0, 0.0, p);
    CHECK(z.col(0).norm() == 0.0);
    CHECK(z.col(1).norm() > 0.0);

    const Mat42 g = forcing_matrix(0.0, 2.0, 5.0, p);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(1, 0) == doctest::Approx(std::sqrt(2.0) * 1e-6 * std::exp(-1.0) * 5.0).epsilon(1e-15));
    CHECK(g(2, 0) == 0.0);
    CHECK(g(3, 0) == 0.0);
    CHECK(g(0, 1) == 0.0);
    CHECK(g(1, 1) == 0.0);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 20; ++i) {
        const double tau = u(rng), t = tau + u(rng);
        const std::complex<double> d{u(rng), u(rng)};
        SystemParams p3 = p;
        p3.coupling *= 3.0;
        const Mat42 a = forcing_matrix(tau, t, d, p);
        const Mat42 b = forcing_matrix(tau, t, d, p3);
        CHECK(b.col(0).norm() == doctest::Approx(3.0 * a.col(0).norm()).epsilon(1e-14));
        CHECK(b.col(1).norm() == doctest::Approx(3.0 * a.col(1).norm()).epsilon(1e-14));
    }
}

TEST_CASE("symmetrized kernels") {
    SystemParams p;
    const auto mech = NoiseChannel::mechanical;
    const auto cav = NoiseChannel::cavity;
    CHECK(symmetrized_kernel(mech, mech, 2.0, 2.0, 5.0, p, 1.0, 1.0) ==
          doctest::Approx(-std::expm1(-p.gamma_m * 3.0)).epsilon(1e-12));
    SystemParams hot = p;
    hot.occupancy = 1e4;
    for (double tp : {0.5, 1.7, 2.0}) {
        CHECK(symmetrized_kernel(mech, mech, 2.0, tp, 5.0, hot, 1.0, 1.0) ==
              doctest::Approx((2e4 + 1.0) * symmetrized_kernel(mech, mech, 2.0, tp, 5.0, p, 1.0,
                                                               1.0))
                  .epsilon(1e-15));
    }
    CHECK(symmetrized_kernel(mech, cav, 2.0, 1.0, 5.0, p, 1.0, 2.0) == 0.0);
    CHECK(symmetrized_kernel(cav, mech, 2.0, 1.0, 5.0, p, 1.0, 2.0) == 0.0);
    const std::complex<double> a{1.0, 2.0}, b{-0.5, 3.0};
    CHECK(symmetrized_kernel(cav, cav, 2.0, 1.0, 5.0, p, a, b) ==
          doctest::Approx((std::conj(a) * b).real() * memory_kernel(1.0, 1.0, 2.0, 5.0)));
    CHECK(symmetrized_kernel(cav, cav, 2.0, 1.0, 5.0, p, a, b, {true, false}) == 0.0);
}

TEST_CASE("fast and direct noise covariance agree with a brute-force oracle") {
    const Fixture x(small_scenario());
    for (std::size_t j : {1u, 40u, 250u, 400u}) {
        const Mat4 ref = brute_force(x, j);
        const double scale = std::max(1e-300, oracle::max_abs(ref));
        const Mat4 fast = noise_covariance(x.f, x.tr, x.s.params, j);
        const Mat4 direct = noise_covariance_direct(x.f, x.tr, x.s.params, j);
        CHECK(oracle::max_abs(fast - ref) <= 1e-10 * scale);
        CHECK(oracle::max_abs(direct - ref) <= 1e-10 * scale);
        CHECK(oracle::max_abs(fast - fast.transpose()) <= 1e-14 * scale);
        const Mat4 ref_thermal = brute_force(x, j, false);
        const Mat4 fast_thermal = noise_covariance(x.f, x.tr, x.s.params, j, {true, false});
        CHECK(oracle::max_abs(fast_thermal - ref_thermal) <=
              1e-10 * std::max(1e-300, oracle::max_abs(ref_thermal)));
    }
    CHECK(oracle::max_abs(noise_covariance(x.f, x.tr, x.s.params, 300, {false, true})) == 0.0);
}

TEST_CASE("zero drive gives no noise") {
    ScenarioConfig c = preset("fig1a");
    c.amplitude = 0.0;
    const Fixture x(to_scenario(c));
    for (std::size_t j : {0u, 100u, 500u}) {
        CHECK(oracle::max_abs(noise_covariance(x.f, x.tr, x.s.params, j)) == 0.0);
    }
}

TEST_CASE("noise is PSD and scales as g^2 at weak coupling") {
    // weak enough that Phi is the identity to ~1e-9
    const Fixture a(small_scenario(1e-14));
    const Fixture b(small_scenario(2e-14));
    for (std::size_t j : {200u, 600u}) {
        const Mat4 va = noise_covariance(a.f, a.tr, a.s.params, j);
        const Mat4 vb = noise_covariance(b.f, b.tr, b.s.params, j);
        CHECK(oracle::max_abs(vb - 4.0 * va) <= 1e-6 * oracle::max_abs(vb));
        CHECK(min_eig(va) >= -1e-10 * oracle::max_abs(va));
    }
}

TEST_CASE("occupancy enters linearly and monotonically") {
    const Fixture x0(small_scenario(1e-6, 0.0));
    const Fixture x1(small_scenario(1e-6, 1.0));
    const Fixture xh(small_scenario(1e-6, 1e4));
    for (std::size_t j : {300u, 600u}) {
        const Mat4 v0 = noise_covariance(x0.f, x0.tr, x0.s.params, j);
        const Mat4 v1 = noise_covariance(x1.f, x1.tr, x1.s.params, j);
        const Mat4 vh = noise_covariance(xh.f, xh.tr, xh.s.params, j);
        // thermal-only at n = 1 is exactly two units of the mechanical channel
        const Mat4 mech = 0.5 * noise_covariance(x1.f, x1.tr, x1.s.params, j, {true, false});
        CHECK(oracle::max_abs(vh - v0 - 2e4 * mech) <= 1e-8 * oracle::max_abs(vh - v0));
        CHECK(oracle::max_abs(v1 - v0 - 2.0 * mech) <= 1e-12 * oracle::max_abs(v1));
        const Mat4 thermal_h = noise_covariance(xh.f, xh.tr, xh.s.params, j, {true, false});
        CHECK(oracle::max_abs(thermal_h - 2e4 * mech) <= 1e-12 * oracle::max_abs(thermal_h));
        CHECK(min_eig(v1 - v0) >= -1e-10 * oracle::max_abs(v1));
        CHECK(min_eig(vh - v1) >= -1e-10 * oracle::max_abs(vh));
    }
}

TEST_CASE("fig1a noise is grid converged") {
    ScenarioConfig c = preset("fig1a");
    const Fixture coarse(to_scenario(c));
    c.step = coarse.s.grid.step / 2.0;
    c.horizon = coarse.s.grid.time(coarse.s.grid.intervals);
    const Fixture fine(to_scenario(c));
    for (std::size_t j : {coarse.tr.size() / 2, coarse.tr.size() - 1}) {
        const Mat4 a = noise_covariance(coarse.f, coarse.tr, coarse.s.params, j);
        const Mat4 b = noise_covariance(fine.f, fine.tr, fine.s.params, 2 * j);
        CHECK(std::abs(oracle::max_abs(a) - oracle::max_abs(b)) < 5e-3 * oracle::max_abs(b));
    }
}
