#ifndef PHASEQUANT_CORNELL_HPP
#define PHASEQUANT_CORNELL_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace phasequant {

// Relativistic funnel problem, hbar = c = 1 throughout. The radial
// equation's momentum function is
//   p^2(r) = E^2/4 - (m - alpha_tilde/r + kappa r)^2 - (l+1/2)^2/r^2.
struct CornellParams {
    double m = 0.0;           // quark mass, GeV
    double alpha_tilde = 0.5; // (4/3) alpha_s
    double kappa = 0.2;       // string tension, GeV^2
    int l = 0;

    double lambda() const; // sqrt((l+1/2)^2 + alpha_tilde^2)
    void validate() const;
};

struct CornellLevel {
    int n_r = 0;
    double E_squared = 0.0;
    double E = 0.0;
};

// The bracket of the radial equation; r > 0 (throws DomainError otherwise).
double cornell_p_squared(const CornellParams& params, double E, double r);

// Coefficients of r^2 p^2(r), a quartic in r, highest power first:
// {-kappa^2, -2 m kappa, E^2/4 - m^2 + 2 alpha_tilde kappa,
//  2 m alpha_tilde, -(alpha_tilde^2 + (l+1/2)^2)}.
std::array<double, 5> cornell_quartic_coeffs(const CornellParams& params, double E);

// All real-line cuts of p^2: the physical r > 0 cut and, when the quartic has
// four real roots, its r < 0 companion. The contour of the quantization
// condition encloses every one of them.
std::vector<std::pair<double, double>> cornell_cuts(const CornellParams& params, double E);

// Sum over all real cuts of the integral of sqrt(p^2).
double cornell_cut_action(const CornellParams& params, double E, double rel_tol = 1e-10);

// E^2 = 8 kappa [2 (n_r + 1/2) + Lambda - alpha_tilde].
CornellLevel cornell_spectrum_closed_form(const CornellParams& params, int n_r);

// | sum_cuts int sqrt(p^2) dr  -  pi (E^2/(8 kappa) + alpha_tilde - Lambda) |;
// the real-cut sum is half the closed contour integral.
double contour_identity_residual(const CornellParams& params, double E,
                                 double rel_tol = 1e-10);

// Solves cut-sum(E) = 2 pi (n_r + 1/2). Agrees with the closed form when
// all four turning points are real; if the solution has no positive-r cut
// (or the cut count is off) a DomainError reports the anomaly.
CornellLevel cornell_quantize_numeric(const CornellParams& params, int n_r,
                                      double rel_tol = 1e-10);

// Lowest E at which a positive-r cut exists: 2 sqrt(min_r>0 [(m - at/r +
// kappa r)^2 + (l+1/2)^2/r^2]). For m = 0 this equals sqrt(8k(Lambda-at)).
double cornell_positive_cut_threshold(const CornellParams& params);

struct ReggeRow {
    int n_r = 0;
    int l = 0;
    double E_squared = 0.0;
    std::optional<double> m_squared_shifted; // E^2 - C^2 when a shift is given
};

std::vector<ReggeRow> regge_table(const CornellParams& params, int n_r_max, int l_max,
                                  std::optional<double> shift_c = std::nullopt);

} // namespace phasequant

#endif
