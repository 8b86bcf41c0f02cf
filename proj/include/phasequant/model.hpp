#ifndef PHASEQUANT_MODEL_HPP
#define PHASEQUANT_MODEL_HPP

#include "phasequant/expr.hpp"
#include "phasequant/numerics.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace phasequant {

// Where the coordinate lives: the whole line or r > 0.
enum class Domain { full_line, half_line };

// V(x) = m omega^2 x^2 / 2
struct HarmonicPotential {
    double omega = 1.0;
};

// V(r) = -e2 / r
struct CoulombPotential {
    double e2 = 1.0;
};

// V(r) = kappa r
struct LinearPotential {
    double kappa = 1.0;
};

// V(r) = -alpha_tilde / r + kappa r  (nonrelativistic funnel potential;
// the relativistic treatment lives in cornell.hpp)
struct FunnelPotential {
    double alpha_tilde = 0.5;
    double kappa = 0.2;
};

struct CustomPotential {
    Expr expr;
};

class Potential {
public:
    using Kind = std::variant<HarmonicPotential, CoulombPotential, LinearPotential,
                              FunnelPotential, CustomPotential>;

    static Potential harmonic(double mass, double omega);
    static Potential coulomb(double e2);
    static Potential linear(double kappa);
    static Potential funnel(double alpha_tilde, double kappa);
    static Potential custom(Expr expr, Domain domain);

    Domain domain() const { return domain_; }
    const Kind& kind() const { return kind_; }
    std::string kind_name() const;

    // Tagged evaluation: never throws, callers that can't handle failure
    // use value_at instead. `mass` is only read by the harmonic builtin.
    EvalResult try_value(double x, double mass) const;
    double value_at(double x, double mass) const; // throws DomainError

private:
    Potential(Kind kind, Domain domain) : kind_(std::move(kind)), domain_(domain) {}
    Kind kind_;
    Domain domain_;
};

// The quantization problem: U(x) = 2 m V(x), P^2 = 2 m E, with the
// optional radial term (l + 1/2)^2 hbar^2 / x^2 added to U.
struct QuantProblem {
    Potential potential;
    double mass = 1.0;
    double hbar = 1.0;
    std::optional<int> angular; // l >= 0
    double window_lo = 0.0;
    double window_hi = 0.0;
    Tolerances tol;

    QuantProblem(Potential pot, double mass_in = 1.0, double hbar_in = 1.0,
                 std::optional<int> l = std::nullopt);

    // Override the default scan window ([-50, 50] full line,
    // (1e-8, 200] half line).
    void set_window(double lo, double hi);
};

struct SpectrumEntry {
    int n = 0;
    double energy = 0.0;
    double phase_residual = 0.0; // |W/hbar - pi (n + 1/2)| actually achieved
};

// U_eff(x) = 2 m V(x) [+ Langer term]. Tagged flavor for scanning code.
EvalResult try_effective_U(const QuantProblem& problem, double x);
double effective_U(const QuantProblem& problem, double x);

// 2 m E - U_eff(x); negative in classically forbidden regions.
EvalResult try_momentum_squared(const QuantProblem& problem, double E, double x);
double momentum_squared(const QuantProblem& problem, double E, double x);

} // namespace phasequant

#endif
