#ifndef PHASEQUANT_ORACLE_HPP
#define PHASEQUANT_ORACLE_HPP

#include "phasequant/cornell.hpp"
#include "phasequant/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace phasequant {

// Finite-difference solver for -psi'' = Q(E, x) psi with Dirichlet-zero
// boundaries, used as the independent check on the semiclassical spectra.
using QFunction = std::function<double(double E, double x)>;

struct GridSpec {
    double x_min = 0.0;
    double x_max = 0.0;
    double h = 1e-3;

    int intervals() const; // (x_max - x_min)/h rounded; must be >= 100
    void validate() const;
};

struct OracleLevel {
    int index = 0;          // node count
    double energy = 0.0;    // Richardson-combined h and h/2 value
    double grid_residual = 0.0; // |E(h/2) - E(h)|
};

struct NumerovResult {
    int nodes = 0;
    double mismatch = 0.0; // log-derivative gap at the matching point
};

// One two-sided sweep of the three-term recurrence at fixed E, matched at
// the grid point nearest the outermost classical turning point.
NumerovResult numerov_solve(const QFunction& Q, const GridSpec& grid, double E);

// Eigenvalues 0..index_max inside [e_lo, e_hi], isolated by node-count
// bisection and refined on the mismatch sign. Each level is recomputed at
// h/2: `energy` is the Richardson-extrapolated value.
std::vector<OracleLevel> oracle_spectrum(const QFunction& Q, const GridSpec& grid,
                                         int index_max, double e_lo, double e_hi);

// Q for a QuantProblem, psi'' = -(P^2 - U)/hbar^2 psi. The centrifugal
// term uses the exact l(l+1), not the Langer substitution; the two sides
// of a comparison stay independent that way.
QFunction oracle_q(const QuantProblem& problem);

// Q for the relativistic funnel equation (eigenvalue parameter E > 0).
QFunction oracle_q(const CornellParams& params);

// Auto-sized grid: spans the classically allowed region at e_top plus
// forbidden tails deep enough that the decay exponent exceeds ~15.
GridSpec auto_grid(const QFunction& Q, double e_top, double x_lo_limit,
                   double x_hi_limit, bool half_line, double h = 1e-3);

struct DeviationRow {
    int index = 0;
    double semiclassical = 0.0;
    double oracle = 0.0;
    double grid_residual = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
};

struct CompareReport {
    std::vector<DeviationRow> rows;
    double max_abs_dev = 0.0;
    double max_rel_dev = 0.0;
    double mean_abs_dev = 0.0;
};

// Index-aligned deviation table; throws UsageError on a length mismatch.
CompareReport compare_report(const std::vector<double>& semiclassical,
                             const std::vector<OracleLevel>& oracle);

} // namespace phasequant

#endif
