#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "floqlab/error.hpp"
#include "floqlab/spin.hpp"

using namespace floqlab;

namespace {

using Mat2 = std::array<complexd, 4>;

Mat2 matmul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Independent oracle: exp(-i (h.sigma) dt) by scaling-and-squaring with a
// 16th-order Taylor series.
Mat2 exp_series_oracle(const FieldVector& h, double dt) {
    const complexd mi{0.0, -1.0};
    Mat2 a{mi * (h.hz * dt), mi * complexd(h.hx, -h.hy) * dt,
           mi * complexd(h.hx, h.hy) * dt, mi * (-h.hz * dt)};
    int squarings = 0;
    double scale = h.norm() * dt;
    while (scale > 0.25) {
        scale /= 2.0;
        ++squarings;
    }
    const double factor = std::pow(2.0, -squarings);
    for (auto& v : a) v *= factor;

    Mat2 result{1.0, 0.0, 0.0, 1.0};
    Mat2 power{1.0, 0.0, 0.0, 1.0};
    double fact = 1.0;
    for (int n = 1; n <= 16; ++n) {
        power = matmul(power, a);
        fact *= n;
        for (int k = 0; k < 4; ++k) result[k] += power[k] / fact;
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

double max_dev(const Unitary2& u, const Mat2& m) {
    return std::max({std::abs(u.u00 - m[0]), std::abs(u.u01 - m[1]), std::abs(u.u10 - m[2]),
                     std::abs(u.u11 - m[3])});
}

BlochState random_unit(std::mt19937& rng) {
    std::normal_distribution<double> g;
    double x = g(rng), y = g(rng), z = g(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    return {x / n, y / n, z / n};
}

}  // namespace

TEST_CASE("pauli_exp closed form") {
    SUBCASE("zero field is the identity") {
        const Unitary2 u = pauli_exp({0.0, 0.0, 0.0}, 1.0);
        CHECK(u.u00 == complexd{1.0, 0.0});
        CHECK(u.u01 == complexd{0.0, 0.0});
        CHECK(u.u10 == complexd{0.0, 0.0});
        CHECK(u.u11 == complexd{1.0, 0.0});
    }
    SUBCASE("analytic z-rotation") {
        // quarter turn of the phase: exp(-i sz pi/2) = -i sz
        const Unitary2 q = pauli_exp({0.0, 0.0, 1.0}, M_PI / 2.0);
        CHECK(std::abs(q.u00 - complexd{0.0, -1.0}) < 1e-15);
        CHECK(std::abs(q.u11 - complexd{0.0, 1.0}) < 1e-15);
        CHECK(std::abs(q.u01) < 1e-15);
        // full pi angle gives -1
        const Unitary2 u = pauli_exp({0.0, 0.0, 1.0}, M_PI);
        CHECK(std::abs(u.u00 - complexd{-1.0, 0.0}) < 1e-15);
        CHECK(std::abs(u.u11 - complexd{-1.0, 0.0}) < 1e-15);
    }
    SUBCASE("matches the series oracle") {
        const FieldVector h{0.3, -0.7, 0.2};
        CHECK(max_dev(pauli_exp(h, 0.11), exp_series_oracle(h, 0.11)) < 1e-12);

        std::mt19937 rng(7);
        std::uniform_real_distribution<double> comp(-2.0, 2.0), step(0.0, 3.0);
        for (int i = 0; i < 200; ++i) {
            const FieldVector hr{comp(rng), comp(rng), comp(rng)};
            const double dt = step(rng);
            CHECK(max_dev(pauli_exp(hr, dt), exp_series_oracle(hr, dt)) < 1e-12);
        }
    }
    SUBCASE("rejects non-finite input") {
        CHECK_THROWS_AS(pauli_exp({std::nan(""), 0.0, 0.0}, 1.0), InvalidArgument);
        CHECK_THROWS_AS(pauli_exp({0.0, 0.0, 1.0}, -1.0), InvalidArgument);
    }
}

TEST_CASE("pauli_exp unitarity and composition") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> comp(-3.0, 3.0), step(0.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        const FieldVector h{comp(rng), comp(rng), comp(rng)};
        const double a = step(rng), b = step(rng);
        const Unitary2 ua = pauli_exp(h, a);
        CHECK(ua.unitarity_defect() < 1e-12);
        const Unitary2 uab = ua.compose(pauli_exp(h, b));
        CHECK(max_dev(pauli_exp(h, a + b),
                      {uab.u00, uab.u01, uab.u10, uab.u11}) < 1e-11);
    }
}

TEST_CASE("bloch_of") {
    SUBCASE("poles and equator") {
        const BlochState north = bloch_of({1.0, 0.0});
        CHECK(north.z == doctest::Approx(1.0).epsilon(1e-14));
        const BlochState xplus = bloch_of({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
        CHECK(xplus.x == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(xplus.y) < 1e-14);
        CHECK(std::abs(xplus.z) < 1e-14);
    }
    SUBCASE("direct expectation arithmetic") {
        const BlochState b = bloch_of({complexd{0.6, 0.0}, complexd{0.0, 0.8}});
        CHECK(b.x == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(b.y == doctest::Approx(0.96).epsilon(1e-14));
        CHECK(b.z == doctest::Approx(-0.28).epsilon(1e-14));
    }
    SUBCASE("zero spinor rejected") {
        CHECK_THROWS_AS(bloch_of({complexd{0.0, 0.0}, complexd{0.0, 0.0}}), InvalidArgument);
    }
}

TEST_CASE("spinor_of gauge and round trip") {
    const Spinor north = spinor_of({0.0, 0.0, 1.0});
    CHECK(std::abs(north.c0 - complexd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(north.c1) < 1e-15);
    const Spinor south = spinor_of({0.0, 0.0, -1.0});
    CHECK(std::abs(south.c0) < 1e-15);
    CHECK(std::abs(south.c1 - complexd{1.0, 0.0}) < 1e-15);

    CHECK_THROWS_AS(spinor_of({0.0, 0.0, 0.5}), InvalidArgument);

    std::mt19937 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const BlochState b = random_unit(rng);
        const Spinor s = spinor_of(b);
        CHECK(s.c0.imag() == 0.0);
        CHECK(s.c0.real() >= 0.0);
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
        const BlochState back = bloch_of(s);
        CHECK(bloch_distance(b, back) < 1e-12);
    }
}

TEST_CASE("unitary application preserves the norm") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> comp(-3.0, 3.0), step(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Spinor s = spinor_of(random_unit(rng));
        const Unitary2 u = pauli_exp({comp(rng), comp(rng), comp(rng)}, step(rng));
        CHECK(std::abs(u.apply(s).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("eigenstate_lower both gauges") {
    const Spinor down_field = eigenstate_lower(FieldVector{0.0, 0.0, -1.0});
    CHECK(bloch_distance(bloch_of(down_field), {0.0, 0.0, 1.0}) < 1e-14);
    const Spinor x_field = eigenstate_lower(FieldVector{1.0, 0.0, 0.0});
    CHECK(bloch_distance(bloch_of(x_field), {-1.0, 0.0, 0.0}) < 1e-14);
    // north-pole field exercises the alternate gauge
    const Spinor up_field = eigenstate_lower(FieldVector{0.0, 0.0, 2.5});
    CHECK(bloch_distance(bloch_of(up_field), {0.0, 0.0, -1.0}) < 1e-14);

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> comp(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const FieldVector h{comp(rng), comp(rng), comp(rng)};
        const double hn = h.norm();
        if (hn < 1e-6) continue;
        const Spinor psi = eigenstate_lower(h);
        // eigen-residual || (h.sigma) psi + |h| psi ||
        const complexd r0 = h.hz * psi.c0 + complexd(h.hx, -h.hy) * psi.c1 + hn * psi.c0;
        const complexd r1 = complexd(h.hx, h.hy) * psi.c0 - h.hz * psi.c1 + hn * psi.c1;
        CHECK(std::sqrt(std::norm(r0) + std::norm(r1)) < 1e-12 * std::max(1.0, hn));
        const BlochState b = bloch_of(psi);
        CHECK(bloch_distance(b, {-h.hx / hn, -h.hy / hn, -h.hz / hn}) < 1e-12);
    }

    CHECK_THROWS_AS(eigenstate_lower(FieldVector{0.0, 0.0, 0.0}), DegenerateField);
}
