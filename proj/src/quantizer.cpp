#include "phasequant/quantizer.hpp"
#include "phasequant/errors.hpp"
#include "phasequant/log.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace phasequant {

namespace {

// Total action W(E); energies below every allowed region count as W = 0 so
// the bracket expansion can start right above the potential minimum.
double total_action(const QuantProblem& problem, double E) {
    try {
        return phase_integral(problem, E).value;
    } catch (const NoCutError&) {
        return 0.0;
    }
}

int cut_count(const QuantProblem& problem, double E) {
    try {
        return static_cast<int>(turning_points(problem, E).cuts.size());
    } catch (const NoCutError&) {
        return 0;
    }
}

double potential_floor(const QuantProblem& problem) {
    Fn u = [&problem](double x) {
        const EvalResult r = try_effective_U(problem, x);
        return r.ok() ? r.value / (2.0 * problem.mass)
                      : std::numeric_limits<double>::quiet_NaN();
    };
    const double x_min = minimize_scan(u, problem.window_lo, problem.window_hi, 4096);
    const double v = u(x_min);
    if (!std::isfinite(v))
        throw DomainError("effective potential has no finite minimum on the window");
    return v;
}

struct EnergyBracket {
    double lo = 0.0;
    double hi = 0.0;
    double w_lo = 0.0;
    double w_hi = 0.0;
};

// Expand upward from just above the potential floor until W crosses the
// target. A window-edge hit caps the expansion (continuum threshold) and
// the gap is bisected toward it.
EnergyBracket expand_bracket(const QuantProblem& problem, double target) {
    const double floor = potential_floor(problem);
    double e_lo = floor + 1e-9 * std::max(1.0, std::abs(floor));
    double w_lo = total_action(problem, e_lo); // UnboundedError here means no bound states at all
    if (w_lo >= target) {
        // Target already exceeded at the floor: shrink toward it.
        double a = floor, b = e_lo;
        for (int i = 0; i < 200 && w_lo >= target; ++i) {
            b = 0.5 * (a + b);
            w_lo = total_action(problem, b);
            e_lo = b;
        }
        if (w_lo >= target)
            throw NumericalError("energy bracket: cannot get below the phase target");
    }

    double step = std::max(1e-2 * std::max(1.0, std::abs(e_lo)), 1e-6);
    std::optional<double> ceiling;
    for (int iter = 0; iter < 400; ++iter) {
        double cand;
        if (ceiling) {
            cand = 0.5 * (e_lo + *ceiling);
            if (*ceiling - e_lo <= 1e-14 * std::max(1.0, std::abs(e_lo)))
                throw NumericalError(
                    "energy bracket: phase target unreachable below the continuum threshold");
        } else {
            cand = e_lo + step;
            step *= 2.0;
        }
        double w_cand;
        try {
            w_cand = total_action(problem, cand);
        } catch (const UnboundedError&) {
            ceiling = cand;
            continue;
        }
        if (w_cand >= target) return {e_lo, cand, w_lo, w_cand};
        e_lo = cand;
        w_lo = w_cand;
    }
    throw NumericalError("energy bracket expansion failed (non-confining potential?)");
}

// Brent on W(E) - target with the dual stopping rule: relative energy
// width, or phase residual below 1e-10 * pi * hbar, whichever binds first.
double solve_energy(const QuantProblem& problem, double target, EnergyBracket br) {
    const double f_tol = 1e-10 * std::numbers::pi * problem.hbar;
    auto g = [&](double E) { return total_action(problem, E) - target; };

    double a = br.lo, b = br.hi;
    double fa = br.w_lo - target, fb = br.w_hi - target;
    if (fa > 0.0 || fb < 0.0) throw NumericalError("solve_energy: invalid bracket");
    if (std::abs(fa) <= f_tol) return a;
    if (std::abs(fb) <= f_tol) return b;

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 =
            0.5 * problem.tol.energy_rel * std::max(1.0, std::abs(b)) + 2e-16 * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(fb) <= f_tol || std::abs(xm) <= tol1) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = g(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw NumericalError("solve_energy: no convergence after 200 iterations");
}

SpectrumEntry finish_entry(const QuantProblem& problem, int n, double target, double E) {
    SpectrumEntry entry;
    entry.n = n;
    entry.energy = E;
    entry.phase_residual = std::abs(total_action(problem, E) - target) / problem.hbar;
    return entry;
}

} // namespace

SpectrumEntry quantize_2tp(const QuantProblem& problem, int n) {
    if (n < 0) throw UsageError("quantize_2tp: n must be >= 0");
    const double target = std::numbers::pi * problem.hbar * (n + 0.5);
    const EnergyBracket br = expand_bracket(problem, target);
    const double E = solve_energy(problem, target, br);
    const int cuts = cut_count(problem, E);
    if (cuts != 1)
        log_info("quantize_2tp: " + std::to_string(cuts) + " cuts at the n=" +
                 std::to_string(n) + " solution (2TP node indexing assumes one)");
    return finish_entry(problem, n, target, E);
}

SpectrumEntry quantize_mtp(const QuantProblem& problem, int N, int mu) {
    if (N < 0) throw UsageError("quantize_mtp: N must be >= 0");
    if (mu < 2 || mu % 2 != 0) throw UsageError("quantize_mtp: mu must be even and >= 2");
    const double target = std::numbers::pi * problem.hbar * (N + 0.25 * mu);
    EnergyBracket br = expand_bracket(problem, target);

    // The condition presumes a fixed number of cuts; restrict the search to
    // the largest constant-cut-count subinterval found by a 64-point scan.
    constexpr int kScan = 64;
    std::vector<int> counts(kScan);
    for (int i = 0; i < kScan; ++i) {
        const double E = br.lo + (br.hi - br.lo) * i / (kScan - 1);
        counts[i] = cut_count(problem, E);
    }
    int best_len = 0, best_begin = 0;
    int run_begin = 0;
    for (int i = 1; i <= kScan; ++i) {
        if (i == kScan || counts[i] != counts[run_begin]) {
            if (counts[run_begin] > 0 && i - run_begin > best_len) {
                best_len = i - run_begin;
                best_begin = run_begin;
            }
            run_begin = i;
        }
    }
    if (best_len > 0 && best_len < kScan) {
        const double lo = br.lo + (br.hi - br.lo) * best_begin / (kScan - 1);
        const double hi = br.lo + (br.hi - br.lo) * (best_begin + best_len - 1) / (kScan - 1);
        const double w_lo = total_action(problem, lo);
        const double w_hi = total_action(problem, hi);
        if (w_lo <= target && target <= w_hi) br = {lo, hi, w_lo, w_hi};
    }

    const double E = solve_energy(problem, target, br);
    const int nu = cut_count(problem, E);
    if (2 * nu != mu)
        log_info("quantize_mtp: cut-count mismatch at the solution: found nu=" +
                 std::to_string(nu) + ", condition assumed mu=2nu with mu=" + std::to_string(mu));
    return finish_entry(problem, N, target, E);
}

SpectrumResult spectrum(const QuantProblem& problem, int n_max) {
    if (n_max < 0) throw UsageError("spectrum: n_max must be >= 0");
    SpectrumResult result;
    for (int n = 0; n <= n_max; ++n) {
        try {
            result.levels.push_back(quantize_2tp(problem, n));
        } catch (const Error& e) {
            result.error = e.what();
            result.failed_n = n;
            break;
        }
        if (result.levels.size() >= 2) {
            const auto& prev = result.levels[result.levels.size() - 2];
            if (!(result.levels.back().energy > prev.energy))
                throw NumericalError("spectrum: energies failed to increase at n=" +
                                     std::to_string(n));
        }
    }
    return result;
}

} // namespace phasequant
