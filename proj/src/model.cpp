#include "phasequant/model.hpp"
#include "phasequant/errors.hpp"

#include <cmath>

namespace phasequant {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw UsageError(std::string(name) + " must be > 0");
}

} // namespace

Potential Potential::harmonic(double mass, double omega) {
    require_positive(mass, "mass");
    require_positive(omega, "omega");
    return Potential(HarmonicPotential{omega}, Domain::full_line);
}

Potential Potential::coulomb(double e2) {
    require_positive(e2, "e2");
    return Potential(CoulombPotential{e2}, Domain::half_line);
}

Potential Potential::linear(double kappa) {
    require_positive(kappa, "kappa");
    return Potential(LinearPotential{kappa}, Domain::half_line);
}

Potential Potential::funnel(double alpha_tilde, double kappa) {
    if (alpha_tilde < 0.0) throw UsageError("alpha_tilde must be >= 0");
    require_positive(kappa, "kappa");
    return Potential(FunnelPotential{alpha_tilde, kappa}, Domain::half_line);
}

Potential Potential::custom(Expr expr, Domain domain) {
    return Potential(CustomPotential{std::move(expr)}, domain);
}

std::string Potential::kind_name() const {
    struct Visitor {
        std::string operator()(const HarmonicPotential&) const { return "harmonic"; }
        std::string operator()(const CoulombPotential&) const { return "coulomb"; }
        std::string operator()(const LinearPotential&) const { return "linear"; }
        std::string operator()(const FunnelPotential&) const { return "cornell"; }
        std::string operator()(const CustomPotential&) const { return "custom"; }
    };
    return std::visit(Visitor{}, kind_);
}

EvalResult Potential::try_value(double x, double mass) const {
    if (domain_ == Domain::half_line && x <= 0.0)
        return {0.0, EvalError::div_by_zero};
    struct Visitor {
        double x;
        double mass;
        EvalResult operator()(const HarmonicPotential& p) const {
            return {0.5 * mass * p.omega * p.omega * x * x, EvalError::none};
        }
        EvalResult operator()(const CoulombPotential& p) const {
            return {-p.e2 / x, EvalError::none};
        }
        EvalResult operator()(const LinearPotential& p) const {
            return {p.kappa * x, EvalError::none};
        }
        EvalResult operator()(const FunnelPotential& p) const {
            return {-p.alpha_tilde / x + p.kappa * x, EvalError::none};
        }
        EvalResult operator()(const CustomPotential& p) const { return p.expr.eval(x); }
    };
    EvalResult r = std::visit(Visitor{x, mass}, kind_);
    if (r.ok() && !std::isfinite(r.value)) return {0.0, EvalError::overflow};
    return r;
}

double Potential::value_at(double x, double mass) const {
    const EvalResult r = try_value(x, mass);
    if (!r.ok())
        throw DomainError("potential evaluation failed at x=" + std::to_string(x) + ": " +
                          eval_error_name(r.error));
    return r.value;
}

QuantProblem::QuantProblem(Potential pot, double mass_in, double hbar_in,
                           std::optional<int> l)
    : potential(std::move(pot)), mass(mass_in), hbar(hbar_in), angular(l) {
    if (!(mass > 0.0)) throw UsageError("mass must be > 0");
    if (!(hbar > 0.0)) throw UsageError("hbar must be > 0");
    if (angular && *angular < 0) throw UsageError("l must be >= 0");
    if (potential.domain() == Domain::full_line) {
        window_lo = -50.0;
        window_hi = 50.0;
    } else {
        window_lo = 1e-8;
        window_hi = 200.0;
    }
}

void QuantProblem::set_window(double lo, double hi) {
    if (!(lo < hi)) throw UsageError("window must satisfy lo < hi");
    if (potential.domain() == Domain::half_line && lo <= 0.0)
        throw UsageError("half-line window must start above 0");
    window_lo = lo;
    window_hi = hi;
}

EvalResult try_effective_U(const QuantProblem& problem, double x) {
    const EvalResult v = problem.potential.try_value(x, problem.mass);
    if (!v.ok()) return v;
    double u = 2.0 * problem.mass * v.value;
    if (problem.angular) {
        if (x == 0.0) return {0.0, EvalError::div_by_zero};
        const double lh = *problem.angular + 0.5;
        u += lh * lh * problem.hbar * problem.hbar / (x * x);
    }
    if (!std::isfinite(u)) return {0.0, EvalError::overflow};
    return {u, EvalError::none};
}

double effective_U(const QuantProblem& problem, double x) {
    const EvalResult r = try_effective_U(problem, x);
    if (!r.ok())
        throw DomainError("effective_U undefined at x=" + std::to_string(x) + ": " +
                          eval_error_name(r.error));
    return r.value;
}

EvalResult try_momentum_squared(const QuantProblem& problem, double E, double x) {
    const EvalResult u = try_effective_U(problem, x);
    if (!u.ok()) return u;
    const double p2 = 2.0 * problem.mass * E - u.value;
    if (!std::isfinite(p2)) return {0.0, EvalError::overflow};
    return {p2, EvalError::none};
}

double momentum_squared(const QuantProblem& problem, double E, double x) {
    const EvalResult r = try_momentum_squared(problem, E, x);
    if (!r.ok())
        throw DomainError("momentum_squared undefined at x=" + std::to_string(x) + ": " +
                          eval_error_name(r.error));
    return r.value;
}

} // namespace phasequant
