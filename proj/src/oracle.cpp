#include "phasequant/oracle.hpp"
#include "phasequant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phasequant {

namespace {

constexpr double kRescaleLimit = 1e150;

struct Sweep {
    int nodes = 0;
    double log_deriv = 0.0; // (u[im+1] - u[im-1]) / (2 h u[im])
};

// Forward sweep 0..im+1 (or backward n..im-1) with pairwise rescaling.
Sweep sweep_numerov(const std::vector<double>& f, double h, int im, bool forward) {
    const int n = static_cast<int>(f.size()) - 1;
    Sweep out;
    double prev = 0.0;          // boundary value
    double cur = h;             // arbitrary small start; linearity cancels it
    double at_im = 0.0, before = 0.0, after = 0.0;

    const int begin = forward ? 1 : n - 1;
    const int end = forward ? im + 1 : im - 1; // last index computed
    const int dir = forward ? 1 : -1;

    if (begin == im) at_im = cur;
    if (forward ? (begin == im - 1) : (begin == im + 1)) before = cur;

    for (int i = begin; i != end; i += dir) {
        const double next = ((12.0 - 10.0 * f[i]) * cur - f[i - dir] * prev) / f[i + dir];
        if (!std::isfinite(next))
            throw NumericalError("numerov: non-finite recurrence value (bad Q on grid?)");
        if (cur != 0.0 && next * cur < 0.0) ++out.nodes;
        prev = cur;
        cur = next;
        const int idx = i + dir;
        if (idx == im - dir) before = cur;
        if (idx == im) at_im = cur;
        if (idx == im + dir) after = cur;
        if (std::abs(cur) > kRescaleLimit) {
            prev *= 1.0 / kRescaleLimit;
            cur *= 1.0 / kRescaleLimit;
            before *= 1.0 / kRescaleLimit;
            at_im *= 1.0 / kRescaleLimit;
            after *= 1.0 / kRescaleLimit;
        }
    }
    if (at_im == 0.0) at_im = std::numeric_limits<double>::min();
    // forward: before = u[im-1], after = u[im+1]; backward sweep mirrors.
    const double lo = forward ? before : after;
    const double hi = forward ? after : before;
    out.log_deriv = (hi - lo) / (2.0 * h * at_im);
    return out;
}

int match_index(const std::vector<double>& q) {
    const int n = static_cast<int>(q.size()) - 1;
    int im = n / 2;
    for (int i = n - 1; i >= 1; --i) {
        if (q[i] > 0.0 && q[i + 1] <= 0.0) {
            im = i;
            break;
        }
    }
    return std::clamp(im, 2, n - 2);
}

double solve_on_grid(const QFunction& Q, const GridSpec& grid, int k, double e_lo,
                     double e_hi) {
    auto nodes_at = [&](double E) { return numerov_solve(Q, grid, E).nodes; };
    auto mismatch_at = [&](double E) { return numerov_solve(Q, grid, E).mismatch; };

    if (nodes_at(e_lo) > k)
        throw NumericalError("oracle: e_lo already has more than " + std::to_string(k) +
                             " nodes (window too high) for level " + std::to_string(k));
    if (nodes_at(e_hi) < k + 1)
        throw NumericalError("oracle: node saturation for level " + std::to_string(k) +
                             " (grid or energy window too small)");

    // Node-count bisection isolates the band holding exactly level k.
    double lo = e_lo, hi = e_hi;
    for (int i = 0; i < 64; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (nodes_at(mid) >= k + 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-9 * std::max(1.0, std::abs(mid))) break;
    }
    // the transition sits slightly above the eigenvalue; search below it
    double band_hi = hi;
    double band_lo = e_lo;
    {
        double a = e_lo, b = lo;
        for (int i = 0; i < 64; ++i) {
            const double mid = 0.5 * (a + b);
            if (nodes_at(mid) >= k)
                b = mid;
            else
                a = mid;
            if (b - a < 1e-9 * std::max(1.0, std::abs(mid))) break;
        }
        band_lo = (k == 0) ? e_lo : a;
    }

    // One mismatch sign change inside the open band; locate and bisect it.
    const double width = band_hi - band_lo;
    double a = band_lo + 1e-6 * width;
    double b = band_hi - 1e-6 * width;
    double fa = mismatch_at(a), fb = mismatch_at(b);
    if (fa * fb > 0.0) {
        bool found = false;
        constexpr int kProbe = 64;
        double xp = a, fp = fa;
        for (int i = 1; i <= kProbe; ++i) {
            const double x = a + width * i / (kProbe + 1.0);
            const double fx = mismatch_at(x);
            if (std::isfinite(fx) && fp * fx < 0.0 && std::abs(fp) < 1e8 &&
                std::abs(fx) < 1e8) {
                b = x;
                fb = fx;
                a = xp;
                fa = fp;
                found = true;
                break;
            }
            xp = x;
            fp = fx;
        }
        if (!found)
            throw NumericalError("oracle: no mismatch sign change inside the node band for level " +
                                 std::to_string(k));
    }
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (a + b);
        const double fm = mismatch_at(mid);
        if (fa * fm <= 0.0) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
        if (b - a < 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (a + b);
}

} // namespace

int GridSpec::intervals() const {
    return static_cast<int>(std::llround((x_max - x_min) / h));
}

void GridSpec::validate() const {
    if (!(h > 0.0)) throw UsageError("grid: h must be > 0");
    const int n = intervals();
    if (n < 100) throw UsageError("grid: (x_max - x_min)/h must be >= 100");
    if (std::abs(x_min + n * h - x_max) > 1e-9 * std::max(1.0, std::abs(x_max)))
        throw UsageError("grid: (x_max - x_min)/h must be an integer");
}

NumerovResult numerov_solve(const QFunction& Q, const GridSpec& grid, double E) {
    grid.validate();
    const int n = grid.intervals();
    std::vector<double> q(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = grid.x_min + i * grid.h;
        q[static_cast<std::size_t>(i)] = Q(E, x);
        if (!std::isfinite(q[static_cast<std::size_t>(i)]))
            throw NumericalError("numerov: Q not finite at grid point x=" + std::to_string(x));
    }
    const int im = match_index(q);

    std::vector<double> f(q.size());
    const double h2_12 = grid.h * grid.h / 12.0;
    for (std::size_t i = 0; i < q.size(); ++i) f[i] = 1.0 + h2_12 * q[i];

    const Sweep fwd = sweep_numerov(f, grid.h, im, true);
    const Sweep bwd = sweep_numerov(f, grid.h, im, false);

    NumerovResult result;
    result.nodes = fwd.nodes + bwd.nodes;
    result.mismatch = fwd.log_deriv - bwd.log_deriv;
    return result;
}

std::vector<OracleLevel> oracle_spectrum(const QFunction& Q, const GridSpec& grid,
                                         int index_max, double e_lo, double e_hi) {
    grid.validate();
    if (index_max < 0) throw UsageError("oracle_spectrum: index_max must be >= 0");
    std::vector<OracleLevel> levels;
    GridSpec fine = grid;
    fine.h = 0.5 * grid.h;
    for (int k = 0; k <= index_max; ++k) {
        const double e_coarse = solve_on_grid(Q, grid, k, e_lo, e_hi);
        const double e_fine = solve_on_grid(Q, fine, k, e_lo, e_hi);
        OracleLevel level;
        level.index = k;
        level.grid_residual = std::abs(e_fine - e_coarse);
        level.energy = (16.0 * e_fine - e_coarse) / 15.0; // 4th-order Richardson
        levels.push_back(level);
        if (k > 0 && !(levels[static_cast<std::size_t>(k)].energy >
                       levels[static_cast<std::size_t>(k) - 1].energy))
            throw NumericalError("oracle_spectrum: energies failed to increase at index " +
                                 std::to_string(k));
    }
    return levels;
}

QFunction oracle_q(const QuantProblem& problem) {
    const double hbar2 = problem.hbar * problem.hbar;
    const double ll = problem.angular ? static_cast<double>(*problem.angular) *
                                            (*problem.angular + 1)
                                      : 0.0;
    return [problem, hbar2, ll](double E, double x) {
        const double v = problem.potential.value_at(x, problem.mass);
        double u = 2.0 * problem.mass * v;
        if (ll != 0.0) u += ll * hbar2 / (x * x);
        return (2.0 * problem.mass * E - u) / hbar2;
    };
}

QFunction oracle_q(const CornellParams& params) {
    params.validate();
    return [params](double E, double r) { return cornell_p_squared(params, E, r); };
}

GridSpec auto_grid(const QFunction& Q, double e_top, double x_lo_limit, double x_hi_limit,
                   bool half_line, double h) {
    // outermost turning point at the highest energy of interest
    constexpr int kScan = 4096;
    double tp_hi = x_lo_limit, tp_lo = x_hi_limit;
    double x_prev = x_lo_limit;
    double q_prev = Q(e_top, x_prev);
    bool seen = false;
    for (int i = 1; i < kScan; ++i) {
        const double x = x_lo_limit + (x_hi_limit - x_lo_limit) * i / (kScan - 1.0);
        const double qx = Q(e_top, x);
        if (std::isfinite(qx) && std::isfinite(q_prev) && q_prev * qx <= 0.0) {
            if (!seen) tp_lo = x_prev;
            tp_hi = x;
            seen = true;
        }
        x_prev = x;
        q_prev = qx;
    }
    if (!seen) throw DomainError("auto_grid: no turning point below the window edge");

    // extend until the decay exponent integral int sqrt(-Q) passes 15
    auto extend = [&](double from, double limit, int dir) {
        double s = 0.0;
        double x = from;
        const double dx = dir * std::max(50.0 * h, std::abs(limit - from) / 20000.0);
        while ((dir > 0 ? x < limit : x > limit) && s < 15.0) {
            const double qx = Q(e_top, x);
            if (std::isfinite(qx) && qx < 0.0) s += std::sqrt(-qx) * std::abs(dx);
            x += dx;
        }
        return dir > 0 ? std::min(x + std::abs(dx), limit) : std::max(x - std::abs(dx), limit);
    };

    GridSpec grid;
    grid.h = h;
    grid.x_max = extend(tp_hi, x_hi_limit, +1);
    grid.x_min = half_line ? x_lo_limit : extend(tp_lo, x_lo_limit, -1);
    const int n = std::max(100, static_cast<int>(std::ceil((grid.x_max - grid.x_min) / h)));
    grid.x_max = grid.x_min + n * h;
    return grid;
}

CompareReport compare_report(const std::vector<double>& semiclassical,
                             const std::vector<OracleLevel>& oracle) {
    if (semiclassical.size() != oracle.size())
        throw UsageError("compare_report: index ranges differ (" +
                         std::to_string(semiclassical.size()) + " vs " +
                         std::to_string(oracle.size()) + ")");
    CompareReport report;
    double sum_abs = 0.0;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        DeviationRow row;
        row.index = oracle[i].index;
        row.semiclassical = semiclassical[i];
        row.oracle = oracle[i].energy;
        row.grid_residual = oracle[i].grid_residual;
        row.abs_dev = std::abs(semiclassical[i] - oracle[i].energy);
        row.rel_dev = row.abs_dev / std::max(1e-300, std::abs(oracle[i].energy));
        report.rows.push_back(row);
        report.max_abs_dev = std::max(report.max_abs_dev, row.abs_dev);
        report.max_rel_dev = std::max(report.max_rel_dev, row.rel_dev);
        sum_abs += row.abs_dev;
    }
    if (!oracle.empty()) report.mean_abs_dev = sum_abs / static_cast<double>(oracle.size());
    return report;
}

} // namespace phasequant
