#ifndef PHASEQUANT_WAVEFUNCTION_HPP
#define PHASEQUANT_WAVEFUNCTION_HPP

#include "phasequant/action.hpp"
#include "phasequant/model.hpp"

#include <complex>

namespace phasequant {

// Coefficients linking the oscillatory side (A, B) to the exponential side
// (C, D) across a turning point. A = (C e^{i pi/4} + D e^{-i pi/4})/sqrt(2)
// and B its pairing, so that A+B = C+D and i(A-B) = -C+D.
struct ConnectionCoefficients {
    std::complex<double> A;
    std::complex<double> B;
    double C = 0.0;
    double D = 0.0;
    int k = 0; // turning-point index
};

ConnectionCoefficients connect(double C, double D, int k = 0);

enum class WfRegion { left_forbidden, allowed, right_forbidden };
const char* wf_region_name(WfRegion r);

// The piecewise semiclassical bound-state wavefunction:
//   x < x1         :  e^{phi - phi1} / sqrt(2)
//   x1 <= x <= x2  :  cos(phi - phi1 - pi/4)
//   x > x2         :  (-1)^n e^{-phi + phi2} / sqrt(2)
// scaled by one overall constant fixed by numerical normalization.
struct PiecewiseWavefunction {
    QuantProblem problem;
    int n = 0;
    double energy = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double phase_span = 0.0; // measured phi2 - phi1
    double norm_c = 1.0;     // overall constant

    // Phases at the turning points in the convention where the allowed
    // region is centered: phi2 = -phi1 = (phi2 - phi1)/2.
    double phi1() const { return -0.5 * phase_span; }
    double phi2() const { return 0.5 * phase_span; }
};

// Requires `entry` produced by quantize_2tp on this problem (one cut).
// Throws NumericalError if |phi2 - phi1 - pi(n+1/2)| > 1e-8.
PiecewiseWavefunction build_classical_wf(const QuantProblem& problem,
                                         const SpectrumEntry& entry);

double eval_wf(const PiecewiseWavefunction& wf, double x);
WfRegion wf_region(const PiecewiseWavefunction& wf, double x);

// Sign changes strictly inside (x1, x2): a 1e4-point grid scan with
// bisection refinement of each crossing.
int node_count(const PiecewiseWavefunction& wf);

// How flat dW/dx is on the cut: max over the interior 90% of
// hbar |W''| / W'^2 with W'' from central differences.
double constraint_diagnostic(const QuantProblem& problem, double E);

// The free-wave form C_n cos(k_n x + pi n / 2) with the printed
// normalization C_n = sqrt(2 k_n / (pi (n + 1/2) + 1)).
struct StandingWave {
    int n = 0;
    double k_n = 0.0;
    double C_n = 0.0;

    double eval(double x) const;
};

StandingWave standing_wave(int n, double k_n);

} // namespace phasequant

#endif
