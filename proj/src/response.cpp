#include "omsent/response.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "omsent/errors.hpp"

namespace omsent {

namespace {

struct GaussRule {
    std::array<double, 8> x{};  // nodes on [0, 1]
    std::array<double, 8> w{};  // weights summing to 1
    int n = 0;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
GaussRule make_rule(int n) {
    GaussRule rule;
    rule.n = n;
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        rule.x[i] = 0.5 * (1.0 - z);
        rule.w[i] = 1.0 / ((1.0 - z * z) * dp * dp);  // half of 2/((1-z^2) P'^2)
    }
    return rule;
}

const GaussRule& rule_for(int nodes) {
    static const std::array<GaussRule, 8> rules = [] {
        std::array<GaussRule, 8> out;
        for (int n = 1; n <= 8; ++n) out[n - 1] = make_rule(n);
        return out;
    }();
    if (nodes < 1 || nodes > 8) throw DomainError("quadrature nodes must be in [1, 8]");
    return rules[nodes - 1];
}

// int_a^b drive(s) exp(-kappa (b - s)/2) ds
std::complex<double> local_integral(const PulseTrain& train, const SystemParams& params,
                                    double a, double b, const GaussRule& rule) {
    const double len = b - a;
    std::complex<double> sum{0.0, 0.0};
    for (int i = 0; i < rule.n; ++i) {
        const double s = a + len * rule.x[i];
        sum += rule.w[i] * train_drive(train, s, params.detuning) *
               std::exp(-0.5 * params.kappa * (b - s));
    }
    return len * sum;
}

// Same integral with [a, b] split at the envelope breakpoints it contains, so
// every Gauss-Legendre panel sees a smooth integrand.
std::complex<double> split_integral(const PulseTrain& train, const SystemParams& params,
                                    double a, double b, const GaussRule& rule,
                                    const std::vector<double>& breaks) {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), a);
    if (it == breaks.end() || *it >= b) return local_integral(train, params, a, b, rule);
    std::complex<double> sum{0.0, 0.0};
    double lo = a;
    for (; it != breaks.end() && *it < b; ++it) {
        // carry the panel result forward to b
        sum += std::exp(-0.5 * params.kappa * (b - *it)) *
               local_integral(train, params, lo, *it, rule);
        lo = *it;
    }
    return sum + local_integral(train, params, lo, b, rule);
}

}  // namespace

void SystemParams::validate() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(coupling)) throw DomainError("coupling g must be > 0");
    if (!positive(kappa)) throw DomainError("kappa must be > 0");
    if (!positive(gamma_m)) throw DomainError("gamma_m must be > 0");
    if (!positive(omega_m)) throw DomainError("omega_m must be > 0");
    if (!std::isfinite(detuning)) throw DomainError("detuning must be finite");
    if (!std::isfinite(occupancy) || occupancy < 0.0) throw DomainError("occupancy must be >= 0");
}

void Grid::validate() const {
    if (!(std::isfinite(step) && step > 0.0)) throw DomainError("grid step must be > 0");
    if (intervals < 1) throw DomainError("grid needs at least one interval");
}

double memory_kernel(double rate, double t_prime, double tau, double t) {
    if (!(rate > 0.0)) throw DomainError("memory kernel rate must be > 0");
    if (!(0.0 <= t_prime && t_prime <= tau && tau <= t)) {
        throw DomainError("memory kernel requires 0 <= t' <= tau <= t");
    }
    return std::exp(-0.5 * rate * (tau - t_prime)) -
           std::exp(-0.5 * rate * (t - tau)) * std::exp(-0.5 * rate * (t - t_prime));
}

ResponseTrace displacement_trace(const PulseTrain& train, const SystemParams& params,
                                 const Grid& grid, int nodes) {
    grid.validate();
    const GaussRule& rule = rule_for(nodes);
    ResponseTrace trace;
    trace.step = grid.step;
    trace.values.assign(grid.size(), {0.0, 0.0});
    const double decay = std::exp(-0.5 * params.kappa * grid.step);
    const std::vector<double> breaks = train.breakpoints();
    for (std::size_t k = 0; k < grid.intervals; ++k) {
        const double a = grid.time(k);
        const double b = grid.time(k + 1);
        trace.values[k + 1] =
            decay * trace.values[k] + split_integral(train, params, a, b, rule, breaks);
    }
    return trace;
}

std::complex<double> displacement_at(const ResponseTrace& trace, const PulseTrain& train,
                                     const SystemParams& params, double tau, int nodes) {
    if (!(tau >= 0.0)) throw DomainError("displacement time must be >= 0");
    const auto k = std::min(static_cast<std::size_t>(tau / trace.step), trace.size() - 1);
    const double tk = trace.time(k);
    if (tau - tk > trace.step * (1.0 + 1e-12)) throw DomainError("time beyond trace coverage");
    if (tau == tk) return trace.values[k];
    return std::exp(-0.5 * params.kappa * (tau - tk)) * trace.values[k] +
           split_integral(train, params, tk, tau, rule_for(nodes), train.breakpoints());
}

std::complex<double> displacement_literal(const PulseTrain& train, const SystemParams& params,
                                          double t, double tau, double rel_tol) {
    if (!(0.0 <= tau && tau <= t)) throw DomainError("literal displacement needs 0 <= tau <= t");
    if (tau == 0.0) return {0.0, 0.0};

    using boost::math::quadrature::gauss_kronrod;
    const double kappa = params.kappa;

    // Split at the pulse supports and breakpoints so narrow pulses are never
    // stepped over and every panel is smooth.
    std::vector<double> cuts{0.0};
    std::vector<double> marks = train.breakpoints();
    for (int j = 0; j < train.count; ++j) {
        auto [lo, hi] = train.pulse(j).support();
        marks.insert(marks.end(), {lo, train.pulse(j).center, hi});
    }
    for (double c : marks) {
        if (c > 0.0 && c < tau) cuts.push_back(c);
    }
    cuts.push_back(tau);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto integrate = [&](auto&& f) {
        double value = 0.0;
        double scale = 0.0;
        double err_total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] <= cuts[i]) continue;
            double err = 0.0;
            double l1 = 0.0;
            value += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, rel_tol,
                                                          &err, &l1);
            err_total += err;
            scale += l1;
        }
        if (err_total > rel_tol * std::max(scale, 1e-300) && err_total > 1e-300) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge: achieved relative error "
                << err_total / scale << " > " << rel_tol;
            throw IntegrityError(msg.str());
        }
        return value;
    };

    auto first = [&](double s, bool imag) {
        const auto v = train_drive(train, s, params.detuning) * std::exp(-0.5 * kappa * (t - s));
        return imag ? v.imag() : v.real();
    };
    auto second = [&](double s, bool imag) {
        const auto v = memory_kernel(kappa, s, tau, t) * train_drive(train, s, params.detuning);
        return imag ? v.imag() : v.real();
    };

    const double pre = std::exp(-0.5 * kappa * (t - tau));
    const double re = pre * integrate([&](double s) { return first(s, false); }) +
                      integrate([&](double s) { return second(s, false); });
    const double im = pre * integrate([&](double s) { return first(s, true); }) +
                      integrate([&](double s) { return second(s, true); });
    return {re, im};
}

}  // namespace omsent
