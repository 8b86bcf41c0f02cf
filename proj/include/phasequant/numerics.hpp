#ifndef PHASEQUANT_NUMERICS_HPP
#define PHASEQUANT_NUMERICS_HPP

#include <functional>
#include <vector>

namespace phasequant {

using Fn = std::function<double(double)>;

// Solver tolerances shared across the library. Overridable from the CLI
// (--rel-tol sets quad_rel) and the config file's "tolerances" block.
struct Tolerances {
    double root_rel = 1e-12;   // root refinement, relative interval width
    double quad_rel = 1e-10;   // quadrature order-doubling agreement
    double energy_rel = 1e-10; // eigenvalue search, relative
};

// A sign-change interval: lo < hi and f_lo * f_hi <= 0.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

// Uniformly samples f on [lo, hi] and collects disjoint sign-change
// brackets, left to right. Non-finite samples are skipped; if warn_count
// is non-null it receives the number skipped.
std::vector<Bracket> bracket_roots(const Fn& f, double lo, double hi,
                                   int samples, int* warn_count = nullptr);

// Brent-style refinement (bisection with inverse-quadratic acceleration)
// of a sign-change bracket. Converges when the interval width drops below
// rel_tol * max(1, |x|). Throws NumericalError after 200 iterations, or
// when the bracket pinches without |f| falling (degenerate double root).
double refine_root(const Fn& f, const Bracket& bracket, double rel_tol = 1e-12);

// Integral of sqrt(g) over [a, b] where g has simple zeros at the ends:
// substitute x = (a+b)/2 + (b-a)/2 * sin(theta), which absorbs the
// square-root endpoint behavior, then Gauss-Legendre with order doubling
// until two successive orders agree within rel_tol (max order 4096).
// Slightly negative g from endpoint roundoff is clamped to zero; interior
// negativity beyond tolerance throws DomainError (invalid cut).
double integrate_sqrt_cut(const Fn& g, double a, double b, double rel_tol = 1e-10);

// Adaptive Simpson on [a, b] to absolute tolerance abs_tol.
double integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                          int max_depth = 48);

// Scalar minimization: coarse scan at `samples` points followed by
// golden-section refinement of the best interior interval. Returns argmin.
// Non-finite samples are ignored.
double minimize_scan(const Fn& f, double lo, double hi, int samples,
                     double rel_tol = 1e-12);

// Gauss-Legendre nodes/weights on [-1, 1]; order must be one of
// 8,16,...,4096. Cached and thread-safe.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const QuadRule& gauss_legendre(int order);

} // namespace phasequant

#endif
