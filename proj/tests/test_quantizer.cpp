#include "phasequant/quantizer.hpp"
#include "phasequant/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace phasequant;

namespace {

QuantProblem harmonic(double m = 1.0, double omega = 1.0, double hbar = 1.0) {
    return QuantProblem(Potential::harmonic(m, omega), m, hbar);
}

QuantProblem coulomb(int l) { return QuantProblem(Potential::coulomb(1.0), 1.0, 1.0, l); }

double bohr(int n_r, int l) { return -1.0 / (2.0 * (n_r + l + 1.0) * (n_r + l + 1.0)); }

} // namespace

TEST_CASE("harmonic levels are hbar omega (n + 1/2)") {
    CHECK(quantize_2tp(harmonic(), 0).energy == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(quantize_2tp(harmonic(), 7).energy == doctest::Approx(7.5).epsilon(1e-10));
    const SpectrumEntry e = quantize_2tp(harmonic(2.0, 3.0, 0.5), 2);
    CHECK(e.energy == doctest::Approx(0.5 * 3.0 * 2.5).epsilon(1e-10));
    CHECK(e.phase_residual <= 1e-9);
}

TEST_CASE("coulomb with the radial term reproduces the Bohr formula") {
    CHECK(quantize_2tp(coulomb(0), 0).energy == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(quantize_2tp(coulomb(0), 1).energy == doctest::Approx(bohr(1, 0)).epsilon(1e-9));
    CHECK(quantize_2tp(coulomb(2), 1).energy == doctest::Approx(bohr(1, 2)).epsilon(1e-9));
}

TEST_CASE("multi-turning-point condition reduces to the two-point one at mu=2") {
    for (int N = 0; N <= 5; ++N) {
        const double two = quantize_2tp(harmonic(), N).energy;
        const double multi = quantize_mtp(harmonic(), N, 2).energy;
        CHECK(std::abs(multi - two) <= 1e-10 * std::abs(two));
    }
    for (int N = 0; N <= 5; ++N) {
        const double two = quantize_2tp(coulomb(0), N).energy;
        const double multi = quantize_mtp(coulomb(0), N, 2).energy;
        CHECK(std::abs(multi - two) <= 1e-10 * std::abs(two));
    }
    CHECK(quantize_mtp(harmonic(), 3, 2).energy == doctest::Approx(3.5).epsilon(1e-10));
}

TEST_CASE("mu is validated") {
    CHECK_THROWS_AS(quantize_mtp(harmonic(), 0, 3), UsageError);
    CHECK_THROWS_AS(quantize_mtp(harmonic(), 0, 0), UsageError);
    CHECK_THROWS_AS(quantize_mtp(harmonic(), -1, 2), UsageError);
}

TEST_CASE("double well below the barrier quantizes with mu=4") {
    QuantProblem p(Potential::custom(Expr::parse("5*(x^2-1)^2"), Domain::full_line), 1.0, 1.0);
    p.set_window(-4.0, 4.0);
    const SpectrumEntry e0 = quantize_mtp(p, 0, 4);
    CHECK(e0.phase_residual <= 1e-9);
    CHECK(turning_points(p, e0.energy).cuts.size() == 2);
    CHECK(phase_integral(p, e0.energy).value ==
          doctest::Approx(std::numbers::pi * (0 + 1.0)).epsilon(1e-9));

    // energies keep increasing with the node total
    double prev = e0.energy;
    for (int N = 1; N <= 2; ++N) {
        const SpectrumEntry e = quantize_mtp(p, N, 4);
        CHECK(e.energy > prev);
        prev = e.energy;
    }
}

TEST_CASE("spectrum batches levels in order") {
    const SpectrumResult rs = spectrum(harmonic(), 2);
    REQUIRE(rs.levels.size() == 3);
    CHECK_FALSE(rs.error);
    CHECK(rs.levels[0].energy == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rs.levels[1].energy == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(rs.levels[2].energy == doctest::Approx(2.5).epsilon(1e-9));

    const SpectrumResult rc = spectrum(coulomb(0), 1);
    REQUIRE(rc.levels.size() == 2);
    CHECK(rc.levels[0].energy == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(rc.levels[1].energy == doctest::Approx(-0.125).epsilon(1e-9));
}

TEST_CASE("non-confining potentials report a bracket failure") {
    QuantProblem p(Potential::custom(Expr::parse("-x^2"), Domain::full_line), 1.0, 1.0);
    const SpectrumResult rs = spectrum(p, 0);
    CHECK(rs.levels.empty());
    REQUIRE(rs.error);
    CHECK(rs.failed_n == 0);
}

TEST_CASE("adjacent levels differ by exactly pi hbar of action") {
    const QuantProblem p = harmonic(1.0, 1.0, 2.0); // hbar = 2
    const double w0 = phase_integral(p, quantize_2tp(p, 0).energy).value;
    const double w1 = phase_integral(p, quantize_2tp(p, 1).energy).value;
    const double w2 = phase_integral(p, quantize_2tp(p, 2).energy).value;
    CHECK(w1 - w0 == doctest::Approx(std::numbers::pi * 2.0).epsilon(1e-8));
    CHECK(w2 - w1 == doctest::Approx(std::numbers::pi * 2.0).epsilon(1e-8));
}

TEST_CASE("solution is stable under quadrature tolerance halving") {
    QuantProblem loose = coulomb(1);
    loose.tol.quad_rel = 1e-10;
    QuantProblem tight = coulomb(1);
    tight.tol.quad_rel = 5e-11;
    const double a = quantize_2tp(loose, 3).energy;
    const double b = quantize_2tp(tight, 3).energy;
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
}
