#ifndef PHASEQUANT_ACTION_HPP
#define PHASEQUANT_ACTION_HPP

#include "phasequant/model.hpp"

#include <utility>
#include <vector>

namespace phasequant {

// Turning points of momentum_squared(E, .) inside the scan window,
// grouped into classically allowed intervals.
struct TurningPointSet {
    double energy = 0.0;
    std::vector<double> points;                   // strictly increasing
    std::vector<std::pair<double, double>> cuts;  // (x_left, x_right)
};

// W = sum over cuts of the integral of sqrt(P^2 - U); phase = W / hbar.
struct PhaseIntegral {
    double value = 0.0;
    std::vector<double> per_cut;
};

// Locates all simple zeros of momentum_squared(E, .) and groups them into
// cuts. Throws DomainError when there is no allowed region or when an
// allowed region touches the window edge (not a bound state at this E).
TurningPointSet turning_points(const QuantProblem& problem, double E);

PhaseIntegral phase_integral(const QuantProblem& problem, double E,
                             const TurningPointSet& tps);

// Convenience: turning_points + phase_integral.
PhaseIntegral phase_integral(const QuantProblem& problem, double E);

} // namespace phasequant

#endif
