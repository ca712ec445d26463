#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "omsent/errors.hpp"
#include "omsent/pulse.hpp"
#include "oracles.hpp"

using namespace omsent;

TEST_CASE("gaussian envelope values") {
    const Envelope g = Envelope::gaussian(1.0, 1.0, 0.0);
    CHECK(envelope_value(g, 0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(envelope_value(g, std::sqrt(2.0)) ==
          doctest::Approx(std::exp(-1.0) / (2.0 * std::numbers::pi)).epsilon(1e-14));
    for (double d : {0.1, 0.7, 2.3}) {
        const Envelope h = Envelope::gaussian(3.0, 2.0, 1.5);
        CHECK(envelope_value(h, 1.5 + d) ==
              doctest::Approx(envelope_value(h, 1.5 - d)).epsilon(1e-14));
    }
}

TEST_CASE("non-finite time is rejected") {
    const Envelope g = Envelope::gaussian(1.0, 1.0, 0.0);
    CHECK_THROWS_AS(envelope_value(g, std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(envelope_value(g, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("piecewise shapes") {
    const double tp = 2.0;
    const Envelope sq = Envelope::piecewise(ShapeKind::square, 3.0, tp, 5.0);
    CHECK(envelope_value(sq, 3.9) == 0.0);
    CHECK(envelope_value(sq, 6.1) == 0.0);
    CHECK(envelope_value(sq, 5.5) == 3.0);

    const Envelope tri = Envelope::piecewise(ShapeKind::triangle, 2.0, tp, 0.0);
    CHECK(envelope_value(tri, 0.0) == doctest::Approx(2.0));
    CHECK(envelope_value(tri, 0.5) == doctest::Approx(1.0));
    CHECK(envelope_value(tri, -0.5) == doctest::Approx(1.0));

    const Envelope saw = Envelope::piecewise(ShapeKind::sawtooth, 1.0, tp, 0.0);
    CHECK(envelope_value(saw, -1.0 + 0.5) == doctest::Approx(0.25));
    CHECK(envelope_value(saw, 0.999) == doctest::Approx(0.9995));
    CHECK(envelope_value(saw, 1.001) == 0.0);

    const Envelope trap = Envelope::piecewise(ShapeKind::trapezium, 1.0, tp, 0.0, 0.5);
    CHECK(envelope_value(trap, 0.4) == doctest::Approx(1.0));
    CHECK(envelope_value(trap, 0.75) == doctest::Approx(0.5));

    for (const auto& env : {sq, tri, saw, trap}) {
        const auto [a, b] = env.support();
        CHECK(envelope_value(env, a - 1e-9) == 0.0);
        CHECK(envelope_value(env, b + 1e-9) == 0.0);
    }
}

TEST_CASE("sampled shape interpolates linearly") {
    const Envelope s = Envelope::sampled_shape({0.0, 1.0, 3.0, 0.0}, 0.5, 1.0, 2.0);
    const auto [a, b] = s.support();
    CHECK(a == doctest::Approx(0.25));
    CHECK(b == doctest::Approx(1.75));
    CHECK(envelope_value(s, 0.75) == doctest::Approx(2.0));
    CHECK(envelope_value(s, 1.0) == doctest::Approx(4.0));
    CHECK(envelope_value(s, 2.0) == 0.0);
}

TEST_CASE("envelope invariants are validated") {
    CHECK_THROWS_AS(Envelope::gaussian(-1.0, 1.0, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(Envelope::gaussian(1.0, 0.0, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(Envelope::piecewise(ShapeKind::trapezium, 1.0, 1.0, 0.0, 1.5).validate(),
                    DomainError);
    CHECK_THROWS_AS(Envelope::sampled_shape({1.0, -1.0}, 0.1, 0.0).validate(), DomainError);
    PulseTrain t{Envelope::gaussian(1.0, 1.0, 0.0), 0, 1.0};
    CHECK_THROWS_AS(t.validate(), DomainError);
}

TEST_CASE("pulse energy: closed forms against trapezoid quadrature") {
    CHECK(pulse_energy(Envelope::piecewise(ShapeKind::square, 3.0, 2.0, 0.0)) ==
          doctest::Approx(18.0));
    CHECK(pulse_energy(Envelope::gaussian(0.0, 1.0, 0.0)) == 0.0);

    const std::vector<Envelope> shapes = {
        Envelope::gaussian(7.0, 2.5, 1.0),
        Envelope::gaussian(1e8, 10.0, 6.0),
        Envelope::piecewise(ShapeKind::triangle, 2.0, 1.2, 0.0),
        Envelope::piecewise(ShapeKind::sawtooth, 2.0, 1.2, 0.0),
        Envelope::piecewise(ShapeKind::trapezium, 2.0, 1.2, 0.0, 0.3),
        Envelope::sampled_shape({0.0, 1.0, 3.0, 2.0, 0.0}, 0.25, 0.0, 1.5),
    };
    for (const auto& env : shapes) {
        const auto [a, b] = env.support();
        const double pad = env.kind == ShapeKind::gaussian ? 6.0 / env.width : 0.0;
        const double ref = oracle::trapezoid(
            [&](double t) { return std::pow(envelope_value(env, t), 2); }, a - pad, b + pad,
            400000);
        CHECK(pulse_energy(env) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("with_energy rescales amplitude") {
    const Envelope e = with_energy(Envelope::piecewise(ShapeKind::triangle, 1.0, 1.0, 0.0), 5.0);
    CHECK(pulse_energy(e) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("train drive") {
    const Envelope base = Envelope::gaussian(2.0, 3.0, 4.0);
    PulseTrain single{base, 1, 0.0};
    for (double t : {0.0, 3.7, 4.0, 5.2}) {
        const auto d = train_drive(single, t, 0.0);
        CHECK(d.imag() == 0.0);
        CHECK(d.real() == envelope_value(base, t));
    }

    PulseTrain far{base, 2, 1000.0};
    CHECK(train_drive(far, 4.3, 1.7) == train_drive(single, 4.3, 1.7));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    PulseTrain two{base, 3, 2.5};
    PulseTrain doubled = two;
    doubled.base.amplitude *= 2.0;
    for (int i = 0; i < 50; ++i) {
        const double t = u(rng);
        const double det = u(rng) - 10.0;
        std::complex<double> sum = 0.0;
        for (int j = 0; j < two.count; ++j) {
            PulseTrain one{two.pulse(j), 1, 0.0};
            // pulse j carries the phase of its own index
            sum += train_drive(one, t, det) * std::polar(1.0, -det * j * two.gap);
        }
        CHECK(std::abs(train_drive(two, t, det) - sum) <= 1e-14 * (1.0 + std::abs(sum)));
        CHECK(train_drive(doubled, t, det) == 2.0 * train_drive(two, t, det));
        CHECK(std::abs(train_drive(single, t, det)) == std::abs(train_drive(single, t, -det)));
    }
}
