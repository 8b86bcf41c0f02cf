#include "phasequant/cornell.hpp"
#include "phasequant/errors.hpp"
#include "phasequant/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phasequant {

namespace {

// p^2 without the half-line restriction: the negative-r companion cuts of
// the quartic are part of the quantization contour.
double p2_any(const CornellParams& params, double E, double r) {
    const double lh = params.l + 0.5;
    const double core = params.m - params.alpha_tilde / r + params.kappa * r;
    return 0.25 * E * E - core * core - lh * lh / (r * r);
}

// Outermost turning points sit where kappa|r| catches up with E/2; the
// innermost where the centrifugal wall does. Generous scan bounds:
double outer_scan_radius(const CornellParams& params, double E) {
    return (0.5 * E + params.m + params.alpha_tilde + 1.0) / params.kappa + 10.0;
}

std::vector<std::pair<double, double>> cuts_on_side(const CornellParams& params, double E,
                                                    bool negative) {
    const double lh = params.l + 0.5;
    const double r_out = outer_scan_radius(params, E);
    // no allowed region below the centrifugal bound 2 lh / E
    const double r_in = std::min(1e-2 * 2.0 * lh / std::max(E, 1e-12), 1e-3);

    Fn f = negative ? Fn([&params, E](double s) { return p2_any(params, E, -s); })
                    : Fn([&params, E](double s) { return p2_any(params, E, s); });

    std::vector<Bracket> brackets = bracket_roots(f, r_in, r_out, 4096);
    std::vector<double> roots;
    for (const Bracket& br : brackets) roots.push_back(refine_root(f, br, 1e-13));
    std::sort(roots.begin(), roots.end());

    std::vector<std::pair<double, double>> cuts;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const double a = roots[i], b = roots[i + 1];
        if (f(0.5 * (a + b)) > 0.0) cuts.emplace_back(a, b);
    }
    if (negative) {
        // map s back to r = -s and restore left-to-right ordering
        std::vector<std::pair<double, double>> mapped;
        for (auto it = cuts.rbegin(); it != cuts.rend(); ++it)
            mapped.emplace_back(-it->second, -it->first);
        return mapped;
    }
    return cuts;
}

} // namespace

double CornellParams::lambda() const {
    const double lh = l + 0.5;
    return std::sqrt(lh * lh + alpha_tilde * alpha_tilde);
}

void CornellParams::validate() const {
    if (m < 0.0) throw UsageError("cornell: m must be >= 0");
    if (alpha_tilde < 0.0) throw UsageError("cornell: alpha_tilde must be >= 0");
    if (!(kappa > 0.0)) throw UsageError("cornell: kappa must be > 0");
    if (l < 0) throw UsageError("cornell: l must be >= 0");
}

double cornell_p_squared(const CornellParams& params, double E, double r) {
    if (!(r > 0.0)) throw DomainError("cornell_p_squared: r must be > 0");
    return p2_any(params, E, r);
}

std::array<double, 5> cornell_quartic_coeffs(const CornellParams& params, double E) {
    const double lh = params.l + 0.5;
    const double at = params.alpha_tilde;
    const double k = params.kappa;
    return {-k * k, -2.0 * params.m * k, 0.25 * E * E - params.m * params.m + 2.0 * at * k,
            2.0 * params.m * at, -(at * at + lh * lh)};
}

std::vector<std::pair<double, double>> cornell_cuts(const CornellParams& params, double E) {
    params.validate();
    std::vector<std::pair<double, double>> cuts = cuts_on_side(params, E, true);
    std::vector<std::pair<double, double>> pos = cuts_on_side(params, E, false);
    cuts.insert(cuts.end(), pos.begin(), pos.end());
    return cuts;
}

double cornell_cut_action(const CornellParams& params, double E, double rel_tol) {
    double total = 0.0;
    for (const auto& [a, b] : cornell_cuts(params, E)) {
        Fn g = [&params, E](double r) { return p2_any(params, E, r); };
        total += integrate_sqrt_cut(g, a, b, rel_tol);
    }
    return total;
}

CornellLevel cornell_spectrum_closed_form(const CornellParams& params, int n_r) {
    params.validate();
    if (n_r < 0) throw UsageError("cornell: n_r must be >= 0");
    const double e2 =
        8.0 * params.kappa * (2.0 * (n_r + 0.5) + params.lambda() - params.alpha_tilde);
    if (!(e2 > 0.0))
        throw DomainError("cornell: closed form gives non-positive E^2 (unphysical level)");
    return {n_r, e2, std::sqrt(e2)};
}

double contour_identity_residual(const CornellParams& params, double E, double rel_tol) {
    const auto cuts = cornell_cuts(params, E);
    if (cuts.empty())
        throw NoCutError("contour identity: no real cut at E=" + std::to_string(E));
    double total = 0.0;
    Fn g = [&params, E](double r) { return p2_any(params, E, r); };
    for (const auto& [a, b] : cuts) total += integrate_sqrt_cut(g, a, b, rel_tol);
    const double analytic = std::numbers::pi * (E * E / (8.0 * params.kappa) +
                                                params.alpha_tilde - params.lambda());
    return std::abs(total - analytic);
}

double cornell_positive_cut_threshold(const CornellParams& params) {
    params.validate();
    const double lh = params.l + 0.5;
    Fn depth = [&params, lh](double r) {
        const double core = params.m - params.alpha_tilde / r + params.kappa * r;
        return core * core + lh * lh / (r * r);
    };
    const double r_hi = 50.0 * (1.0 + lh) / std::sqrt(params.kappa) + 100.0;
    const double r_star = minimize_scan(depth, 1e-6, r_hi, 8192, 1e-14);
    return 2.0 * std::sqrt(depth(r_star));
}

CornellLevel cornell_quantize_numeric(const CornellParams& params, int n_r, double rel_tol) {
    params.validate();
    if (n_r < 0) throw UsageError("cornell: n_r must be >= 0");
    const double target = 2.0 * std::numbers::pi * (n_r + 0.5);

    auto action = [&](double E) { return cornell_cut_action(params, E, rel_tol); };

    // The cut action is continuous and strictly increasing in E, zero below
    // the first cut threshold.
    double e_lo = 1e-3;
    while (e_lo > 1e-12 && action(e_lo) > 0.0) e_lo *= 0.5;
    double e_hi = std::max(1.0, 2.0 * e_lo);
    double w_hi = action(e_hi);
    for (int i = 0; i < 200 && w_hi < target; ++i) {
        e_hi *= 2.0;
        w_hi = action(e_hi);
    }
    if (w_hi < target) throw NumericalError("cornell quantize: bracket expansion failed");

    double a = e_lo, b = e_hi;
    double fb = w_hi - target;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        const double fm = action(mid) - target;
        if (std::abs(fm) <= 1e-12 * target || (b - a) <= 1e-13 * std::max(1.0, mid)) {
            a = b = mid;
            break;
        }
        if ((fm > 0.0) == (fb > 0.0)) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
        }
    }
    const double E = 0.5 * (a + b);

    const auto cuts = cornell_cuts(params, E);
    const bool has_positive = std::any_of(cuts.begin(), cuts.end(),
                                          [](const auto& c) { return c.first > 0.0; });
    if (!has_positive || cuts.size() != 2) {
        throw DomainError(
            "cornell quantize: cut-count anomaly at E=" + std::to_string(E) + " (found " +
            std::to_string(cuts.size()) + " real cut(s)" +
            (has_positive ? "" : ", none at r>0") +
            "); the contour has complex turning points here and the closed form is out of "
            "reach of real-axis quadrature");
    }
    return {n_r, E * E, E};
}

std::vector<ReggeRow> regge_table(const CornellParams& params, int n_r_max, int l_max,
                                  std::optional<double> shift_c) {
    params.validate();
    if (n_r_max < 0 || l_max < 0) throw UsageError("regge_table: n_r_max and l_max must be >= 0");
    std::vector<ReggeRow> rows;
    for (int l = 0; l <= l_max; ++l) {
        CornellParams p = params;
        p.l = l;
        for (int n_r = 0; n_r <= n_r_max; ++n_r) {
            const CornellLevel level = cornell_spectrum_closed_form(p, n_r);
            ReggeRow row;
            row.n_r = n_r;
            row.l = l;
            row.E_squared = level.E_squared;
            if (shift_c) row.m_squared_shifted = level.E_squared - (*shift_c) * (*shift_c);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace phasequant
