#include "phasequant/numerics.hpp"
#include "phasequant/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

namespace phasequant {

namespace {

constexpr int kMinOrder = 8;
constexpr int kMaxOrder = 4096; // 8 * 2^9

int order_slot(int order) {
    int slot = 0;
    int o = kMinOrder;
    while (o < order && o < kMaxOrder) {
        o *= 2;
        ++slot;
    }
    return o == order ? slot : -1;
}

QuadRule build_gauss_legendre(int n) {
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        // Newton iteration on P_n, starting from the Chebyshev estimate.
        double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - i] = rule.weights[i - 1];
    }
    return rule;
}

} // namespace

const QuadRule& gauss_legendre(int order) {
    static std::array<QuadRule, 10> cache;
    static std::array<std::once_flag, 10> flags;
    const int slot = order_slot(order);
    if (slot < 0) throw UsageError("gauss_legendre: unsupported order " + std::to_string(order));
    std::call_once(flags[static_cast<size_t>(slot)],
                   [&] { cache[static_cast<size_t>(slot)] = build_gauss_legendre(order); });
    return cache[static_cast<size_t>(slot)];
}

std::vector<Bracket> bracket_roots(const Fn& f, double lo, double hi,
                                   int samples, int* warn_count) {
    if (samples < 2) throw UsageError("bracket_roots: samples must be >= 2");
    if (!(lo < hi)) throw UsageError("bracket_roots: window must satisfy lo < hi");

    std::vector<Bracket> out;
    int skipped = 0;
    const double step = (hi - lo) / (samples - 1);

    bool have_prev = false;
    double xp = 0.0, fp = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = (i == samples - 1) ? hi : lo + i * step;
        const double fx = f(x);
        if (!std::isfinite(fx)) {
            ++skipped;
            continue;
        }
        if (fx == 0.0) continue; // exact zero at a node: let neighbors bracket it
        if (have_prev && fp * fx < 0.0) out.push_back({xp, x, fp, fx});
        xp = x;
        fp = fx;
        have_prev = true;
    }
    if (warn_count) *warn_count = skipped;
    return out;
}

double refine_root(const Fn& f, const Bracket& bracket, double rel_tol) {
    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    if (!(a < b)) throw UsageError("refine_root: bracket must satisfy lo < hi");
    if (fa * fb > 0.0) throw UsageError("refine_root: bracket does not straddle a sign change");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;

    const double f_scale = std::max({1.0, std::abs(fa), std::abs(fb)});

    // Brent: b is the current best, a the previous iterate, c keeps the bracket.
    double c = a, fc = fa;
    double d = b - a, e = d;
    const int max_iter = 200;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 0.5 * rel_tol * std::max(1.0, std::abs(b)) + 2.0 * 1e-16 * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (fb == 0.0) return b;
        if (std::abs(xm) <= tol1) {
            // Degenerate double turning point: interval pinched but f never fell.
            if (std::abs(xm) < 1e-13 * std::max(1.0, std::abs(b)) &&
                std::abs(fb) > 1e-10 * f_scale) {
                throw NumericalError("refine_root: degenerate (double) root near x=" +
                                     std::to_string(b));
            }
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, falling back to secant.
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
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw NumericalError("refine_root: no convergence after 200 iterations");
}

double integrate_sqrt_cut(const Fn& g, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    if (a > b) std::swap(a, b);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double half_pi = 0.5 * std::numbers::pi;

    double prev = 0.0;
    bool have_prev = false;
    for (int order = 8; order <= 4096; order *= 2) {
        const QuadRule& rule = gauss_legendre(order);
        double sum = 0.0;
        double g_scale = 0.0;
        double g_worst = 0.0;
        for (int i = 0; i < order; ++i) {
            const double theta = half_pi * rule.nodes[i];
            const double x = mid + half * std::sin(theta);
            double gx = g(x);
            if (!std::isfinite(gx)) throw DomainError("integrate_sqrt_cut: non-finite integrand");
            g_scale = std::max(g_scale, std::abs(gx));
            g_worst = std::min(g_worst, gx);
            if (gx < 0.0) gx = 0.0;
            sum += rule.weights[i] * std::sqrt(gx) * std::cos(theta);
        }
        if (g_worst < -1e-9 * g_scale)
            throw DomainError("integrate_sqrt_cut: integrand negative inside the cut");
        const double value = sum * half * half_pi;
        if (have_prev && std::abs(value - prev) <= rel_tol * std::max(std::abs(value), 1e-12 * half))
            return value;
        prev = value;
        have_prev = true;
    }
    throw NumericalError("integrate_sqrt_cut: no convergence at order 4096");
}

namespace {

double simpson_step(const Fn& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth,
                    int max_depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                          int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol, 0, max_depth);
}

double minimize_scan(const Fn& f, double lo, double hi, int samples, double rel_tol) {
    if (samples < 3) throw UsageError("minimize_scan: samples must be >= 3");
    const double step = (hi - lo) / (samples - 1);
    double best_x = lo, best_f = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double x = (i == samples - 1) ? hi : lo + i * step;
        const double fx = f(x);
        if (std::isfinite(fx) && fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - step);
    double b = std::min(hi, best_x + step);

    // Golden-section, robust to non-finite edges (treated as +inf).
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto val = [&](double x) {
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = val(x1), f2 = val(x2);
    for (int iter = 0; iter < 200 && (b - a) > rel_tol * std::max(1.0, std::abs(best_x)); ++iter) {
        if (f1 < f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = val(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = val(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace phasequant
