#include "phasequant/numerics.hpp"
#include "phasequant/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace phasequant;

TEST_CASE("bracket_roots finds both zeros of 1 - x^2") {
    const auto brackets = bracket_roots([](double x) { return 1.0 - x * x; }, -2.0, 2.0, 1024);
    REQUIRE(brackets.size() == 2);
    CHECK(brackets[0].lo < -1.0);
    CHECK(brackets[0].hi > -1.0);
    CHECK(brackets[1].lo < 1.0);
    CHECK(brackets[1].hi > 1.0);
    CHECK(brackets[0].f_lo * brackets[0].f_hi <= 0.0);
}

TEST_CASE("bracket_roots returns empty when there is no sign change") {
    CHECK(bracket_roots([](double x) { return 1.0 + x * x; }, -5.0, 5.0, 512).empty());
}

TEST_CASE("bracket_roots skips non-finite samples with a count") {
    int skipped = 0;
    const auto brackets = bracket_roots(
        [](double x) { return x < 0.0 ? std::numeric_limits<double>::quiet_NaN() : x - 1.0; },
        -1.0, 3.0, 401, &skipped);
    CHECK(skipped > 0);
    REQUIRE(brackets.size() == 1);
    CHECK(refine_root([](double x) { return x - 1.0; }, brackets[0]) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("funnel quartic has two sign changes on (0, 50]") {
    // r^2 p^2 for m=0, kappa=0.2, alpha_tilde=0.5, l=0, E=2
    auto quartic = [](double r) {
        const double b = 1.0 + 0.2;    // E^2/4 + 2 at k
        const double c = 0.25 + 0.25;  // at^2 + (l+1/2)^2
        return -0.04 * r * r * r * r + b * r * r - c;
    };
    const auto dense = bracket_roots(quartic, 1e-6, 50.0, 100000); // sign-scan oracle
    const auto scan = bracket_roots(quartic, 1e-6, 50.0, 2048);
    REQUIRE(dense.size() == 2);
    REQUIRE(scan.size() == 2);

    // closed-form roots: r^2 = (b +- sqrt(b^2 - 4 k^2 c)) / (2 k^2)
    const double b = 1.2, c = 0.5, k2 = 0.04;
    const double disc = std::sqrt(b * b - 4.0 * k2 * c);
    const double r1 = std::sqrt((b - disc) / (2.0 * k2));
    const double r2 = std::sqrt((b + disc) / (2.0 * k2));
    CHECK(refine_root(quartic, scan[0]) == doctest::Approx(r1).epsilon(1e-10));
    CHECK(refine_root(quartic, scan[1]) == doctest::Approx(r2).epsilon(1e-10));
}

TEST_CASE("refine_root canonical cases") {
    auto f = [](double x) { return 1.0 - x * x; };
    CHECK(refine_root(f, {0.5, 2.0, f(0.5), f(2.0)}) == doctest::Approx(1.0).epsilon(1e-12));
    auto id = [](double x) { return x; };
    CHECK(std::abs(refine_root(id, {-1.0, 1.0, -1.0, 1.0})) <= 1e-12);
}

TEST_CASE("Coulomb-with-radial-term outer turning point") {
    // p^2(r) = -1 + 2/r - 0.25/r^2; r^2 p^2 = -(r^2 - 2r + 0.25),
    // so the outer root is 1 + sqrt(0.75).
    auto p2 = [](double r) { return -1.0 + 2.0 / r - 0.25 / (r * r); };
    const auto brackets = bracket_roots(p2, 1e-3, 10.0, 4096);
    REQUIRE(brackets.size() == 2);
    const double outer = refine_root(p2, brackets[1]);
    CHECK(outer == doctest::Approx(1.0 + std::sqrt(0.75)).epsilon(1e-10));
    const double inner = refine_root(p2, brackets[0]);
    CHECK(inner == doctest::Approx(1.0 - std::sqrt(0.75)).epsilon(1e-10));
}

TEST_CASE("refined root does not depend on how it was bracketed") {
    auto f = [](double x) { return std::cos(x) - 0.3 * x; };
    const auto coarse = bracket_roots(f, 0.0, 3.0, 64);
    const auto fine = bracket_roots(f, 0.0, 3.0, 8192);
    REQUIRE(coarse.size() == 1);
    REQUIRE(fine.size() == 1);
    CHECK(refine_root(f, coarse[0]) == doctest::Approx(refine_root(f, fine[0])).epsilon(1e-12));
}

TEST_CASE("integrate_sqrt_cut reproduces the half-circle area") {
    const double v =
        integrate_sqrt_cut([](double x) { return 1.0 - x * x; }, -1.0, 1.0, 1e-10);
    CHECK(v == doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
}

TEST_CASE("integrate_sqrt_cut degenerate interval is exactly zero") {
    CHECK(integrate_sqrt_cut([](double) { return 1.0; }, 0.7, 0.7, 1e-10) == 0.0);
}

TEST_CASE("integrate_sqrt_cut on the Coulomb cut equals pi/2") {
    // closed form pi (e^2 sqrt(m/(2|E|)) - (l+1/2) hbar) with everything 1
    auto g = [](double r) { return -1.0 + 2.0 / r - 0.25 / (r * r); };
    const double r1 = 1.0 - std::sqrt(0.75), r2 = 1.0 + std::sqrt(0.75);
    const double v = integrate_sqrt_cut(g, r1, r2, 1e-10);
    CHECK(v == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
}

TEST_CASE("integrate_sqrt_cut converges under tolerance halving") {
    auto g = [](double x) { return (x + 2.0) * (3.0 - x) * (1.0 + 0.1 * std::sin(3.0 * x)); };
    const double a = integrate_sqrt_cut(g, -2.0, 3.0, 1e-8);
    const double b = integrate_sqrt_cut(g, -2.0, 3.0, 1e-12);
    CHECK(a == doctest::Approx(b).epsilon(1e-8));
}

TEST_CASE("integrate_sqrt_cut rejects an interior-negative integrand") {
    CHECK_THROWS_AS(
        integrate_sqrt_cut([](double x) { return -(1.0 - x * x); }, -1.0, 1.0, 1e-10),
        DomainError);
}

TEST_CASE("integrate_adaptive handles smooth integrands") {
    const double v = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                        std::numbers::pi, 1e-12);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("minimize_scan locates interior minima") {
    const double x = minimize_scan([](double t) { return (t - 1.5) * (t - 1.5) + 2.0; },
                                   0.0, 10.0, 512);
    CHECK(x == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    const QuadRule& rule = gauss_legendre(8);
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double t = rule.nodes[i];
        sum += rule.weights[i] * (t * t * t * t * t * t); // x^6 over [-1,1] = 2/7
    }
    CHECK(sum == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
    CHECK_THROWS_AS(gauss_legendre(100), UsageError);
}
