#include "phasequant/action.hpp"
#include "phasequant/errors.hpp"
#include "phasequant/log.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace phasequant {

namespace {

constexpr int kScanSamples = 2048;
constexpr int kInteriorProbes = 33;

// A candidate interval is an accepted cut only if p^2 > 0 at every one of
// 33 Chebyshev-spaced interior probes; this rejects spurious bracket pairs.
bool interior_positive(const Fn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int j = 1; j <= kInteriorProbes; ++j) {
        const double t = std::cos(std::numbers::pi * j / (kInteriorProbes + 1));
        const double v = f(mid + half * t);
        if (!(v > 0.0)) return false;
    }
    return true;
}

std::vector<double> refine_points(const Fn& f, const std::vector<Bracket>& brackets,
                                  double rel_tol) {
    std::vector<double> points;
    points.reserve(brackets.size());
    for (const Bracket& br : brackets) points.push_back(refine_root(f, br, rel_tol));
    std::sort(points.begin(), points.end());
    return points;
}

} // namespace

TurningPointSet turning_points(const QuantProblem& problem, double E) {
    const double wlo = problem.window_lo;
    const double whi = problem.window_hi;
    const double width = whi - wlo;

    Fn f = [&problem, E](double x) {
        const EvalResult r = try_momentum_squared(problem, E, x);
        return r.ok() ? r.value : std::numeric_limits<double>::quiet_NaN();
    };

    int skipped = 0;
    std::vector<Bracket> brackets = bracket_roots(f, wlo, whi, kScanSamples, &skipped);
    if (skipped > 0)
        log_debug("turning_points: skipped " + std::to_string(skipped) + " non-finite samples");

    std::vector<double> points = refine_points(f, brackets, problem.tol.root_rel);

    // Narrowly separated roots can hide cuts between scan samples; rescan
    // at 4x density when any pair comes closer than 1e-3 of the window.
    bool close = false;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i] - points[i - 1] < 1e-3 * width) close = true;
    if (close) {
        brackets = bracket_roots(f, wlo, whi, 4 * kScanSamples, &skipped);
        points = refine_points(f, brackets, problem.tol.root_rel);
    }

    TurningPointSet tps;
    tps.energy = E;
    tps.points = points;

    // Partition the window by the turning points and classify each piece.
    std::vector<double> edges;
    edges.push_back(wlo);
    edges.insert(edges.end(), points.begin(), points.end());
    edges.push_back(whi);

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        if (!(b > a)) continue;
        const bool touches_edge = (i == 0) || (i + 2 == edges.size());
        if (!interior_positive(f, a, b)) continue;
        if (touches_edge)
            throw UnboundedError(
                "classically allowed region touches the scan window edge at E=" +
                std::to_string(E) + " (not a bound state on this window)");
        tps.cuts.emplace_back(a, b);
    }

    if (tps.cuts.empty())
        throw NoCutError("no classically allowed region at E=" + std::to_string(E));
    return tps;
}

PhaseIntegral phase_integral(const QuantProblem& problem, double E,
                             const TurningPointSet& tps) {
    PhaseIntegral result;
    Fn g = [&problem, E](double x) { return momentum_squared(problem, E, x); };
    for (const auto& [a, b] : tps.cuts) {
        const double w = integrate_sqrt_cut(g, a, b, problem.tol.quad_rel);
        result.per_cut.push_back(w);
        result.value += w;
    }
    return result;
}

PhaseIntegral phase_integral(const QuantProblem& problem, double E) {
    return phase_integral(problem, E, turning_points(problem, E));
}

} // namespace phasequant
