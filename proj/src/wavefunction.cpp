#include "phasequant/wavefunction.hpp"
#include "phasequant/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace phasequant {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Phase accumulated inside the allowed region, (1/hbar) int_{x1}^{x} |p|.
double allowed_phase(const PiecewiseWavefunction& wf, double x) {
    if (x <= wf.x1) return 0.0;
    Fn g = [&](double t) { return momentum_squared(wf.problem, wf.energy, t); };
    return integrate_sqrt_cut(g, wf.x1, std::min(x, wf.x2), wf.problem.tol.quad_rel) /
           wf.problem.hbar;
}

// Decay exponent on the forbidden side, (1/hbar) int |p| between the
// turning point and x (positive either side).
double forbidden_phase(const PiecewiseWavefunction& wf, double x) {
    Fn g = [&](double t) { return -momentum_squared(wf.problem, wf.energy, t); };
    const double hbar = wf.problem.hbar;
    if (x < wf.x1) return integrate_sqrt_cut(g, x, wf.x1, wf.problem.tol.quad_rel) / hbar;
    if (x > wf.x2) return integrate_sqrt_cut(g, wf.x2, x, wf.problem.tol.quad_rel) / hbar;
    return 0.0;
}

// cos(delta - pi/4) written as (cos delta + sin delta)/sqrt(2) so that the
// allowed-region formula meets the exponential sides bit-exactly at
// delta = 0 (both reduce to the same kInvSqrt2 product).
double allowed_shape(double delta) { return kInvSqrt2 * (std::cos(delta) + std::sin(delta)); }

double unnormalized(const PiecewiseWavefunction& wf, double x) {
    if (x < wf.x1) return kInvSqrt2 * std::exp(-forbidden_phase(wf, x));
    if (x <= wf.x2) return allowed_shape(allowed_phase(wf, x));
    const double sign = (wf.n % 2 == 0) ? 1.0 : -1.0;
    return sign * kInvSqrt2 * std::exp(-forbidden_phase(wf, x));
}

} // namespace

ConnectionCoefficients connect(double C, double D, int k) {
    if (C == 0.0 && D == 0.0)
        throw UsageError("connect: (C, D) must not both be zero");
    const std::complex<double> eip(kInvSqrt2, kInvSqrt2);  // e^{i pi/4}
    const std::complex<double> eim(kInvSqrt2, -kInvSqrt2); // e^{-i pi/4}
    ConnectionCoefficients cc;
    cc.C = C;
    cc.D = D;
    cc.k = k;
    cc.A = kInvSqrt2 * (C * eip + D * eim);
    cc.B = kInvSqrt2 * (C * eim + D * eip);
    return cc;
}

const char* wf_region_name(WfRegion r) {
    switch (r) {
        case WfRegion::left_forbidden: return "I";
        case WfRegion::allowed: return "II";
        case WfRegion::right_forbidden: return "III";
    }
    return "?";
}

PiecewiseWavefunction build_classical_wf(const QuantProblem& problem,
                                         const SpectrumEntry& entry) {
    const TurningPointSet tps = turning_points(problem, entry.energy);
    if (tps.cuts.size() != 1)
        throw DomainError("build_classical_wf: expected one cut, found " +
                          std::to_string(tps.cuts.size()));

    PiecewiseWavefunction wf{problem, entry.n, entry.energy,
                             tps.cuts[0].first, tps.cuts[0].second,
                             0.0, 1.0};

    const PhaseIntegral w = phase_integral(problem, entry.energy, tps);
    wf.phase_span = w.value / problem.hbar;
    const double expected = std::numbers::pi * (entry.n + 0.5);
    if (std::abs(wf.phase_span - expected) > 1e-8)
        throw NumericalError("build_classical_wf: phase span " + std::to_string(wf.phase_span) +
                             " is not pi(n+1/2) to 1e-8; entry not converged");

    // Normalization: cumulative phase over a fine grid covers the allowed
    // region; the exponential tails are integrated adaptively.
    constexpr int kPanels = 8192;
    const double h = (wf.x2 - wf.x1) / kPanels;
    Fn g = [&](double t) { return momentum_squared(problem, entry.energy, t); };

    std::vector<double> psi2(kPanels + 1);
    double delta = 0.0;
    psi2[0] = allowed_shape(0.0);
    psi2[0] *= psi2[0];
    for (int k = 1; k <= kPanels; ++k) {
        const double a = wf.x1 + (k - 1) * h;
        const double b = (k == kPanels) ? wf.x2 : wf.x1 + k * h;
        delta += integrate_sqrt_cut(g, a, b, problem.tol.quad_rel) / problem.hbar;
        const double v = allowed_shape(delta);
        psi2[k] = v * v;
    }
    // composite Simpson over the even panel count
    double allowed_part = psi2[0] + psi2[kPanels];
    for (int k = 1; k < kPanels; ++k) allowed_part += psi2[k] * (k % 2 ? 4.0 : 2.0);
    allowed_part *= h / 3.0;

    Fn tail2 = [&](double x) {
        const double v = kInvSqrt2 * std::exp(-forbidden_phase(wf, x));
        return v * v;
    };
    const double tail_tol = 1e-9 * std::max(1.0, allowed_part);
    const double left_part = integrate_adaptive(tail2, problem.window_lo, wf.x1, tail_tol);
    const double right_part = integrate_adaptive(tail2, wf.x2, problem.window_hi, tail_tol);

    const double total = allowed_part + left_part + right_part;
    if (!(total > 0.0) || !std::isfinite(total))
        throw NumericalError("build_classical_wf: normalization integral failed");
    wf.norm_c = 1.0 / std::sqrt(total);
    return wf;
}

WfRegion wf_region(const PiecewiseWavefunction& wf, double x) {
    if (x < wf.x1) return WfRegion::left_forbidden;
    if (x <= wf.x2) return WfRegion::allowed;
    return WfRegion::right_forbidden;
}

double eval_wf(const PiecewiseWavefunction& wf, double x) {
    return wf.norm_c * unnormalized(wf, x);
}

int node_count(const PiecewiseWavefunction& wf) {
    constexpr int kGrid = 10000;
    const double span = wf.x2 - wf.x1;
    int nodes = 0;
    double x_prev = 0.0, f_prev = 0.0;
    bool have_prev = false;
    for (int i = 1; i <= kGrid; ++i) {
        const double x = wf.x1 + span * i / (kGrid + 1);
        const double f = eval_wf(wf, x);
        if (have_prev && f_prev * f < 0.0) {
            // bisection refinement pins the crossing (guards grid artifacts)
            double a = x_prev, b = x, fa = f_prev;
            for (int it = 0; it < 40; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = eval_wf(wf, m);
                if (fm == 0.0) break;
                if (fa * fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            ++nodes;
        }
        x_prev = x;
        f_prev = f;
        have_prev = true;
    }
    return nodes;
}

double constraint_diagnostic(const QuantProblem& problem, double E) {
    const TurningPointSet tps = turning_points(problem, E);
    if (tps.cuts.size() != 1)
        throw DomainError("constraint_diagnostic: expected one cut, found " +
                          std::to_string(tps.cuts.size()));
    const auto [x1, x2] = tps.cuts[0];
    const double L = x2 - x1;
    const double h = 1e-5 * L;

    auto w_prime = [&](double x) {
        return std::sqrt(std::max(momentum_squared(problem, E, x), 0.0));
    };

    constexpr int kSamples = 901;
    double worst = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double x = (x1 + 0.05 * L) + 0.9 * L * i / (kSamples - 1);
        const double wp = w_prime(x);
        if (wp == 0.0) continue;
        const double wpp = (w_prime(x + h) - w_prime(x - h)) / (2.0 * h);
        worst = std::max(worst, problem.hbar * std::abs(wpp) / (wp * wp));
    }
    return worst;
}

double StandingWave::eval(double x) const {
    return C_n * std::cos(k_n * x + 0.5 * std::numbers::pi * n);
}

StandingWave standing_wave(int n, double k_n) {
    if (n < 0) throw UsageError("standing_wave: n must be >= 0");
    if (!(k_n > 0.0)) throw UsageError("standing_wave: k_n must be > 0");
    StandingWave sw;
    sw.n = n;
    sw.k_n = k_n;
    sw.C_n = std::sqrt(2.0 * k_n / (std::numbers::pi * (n + 0.5) + 1.0));
    return sw;
}

} // namespace phasequant
