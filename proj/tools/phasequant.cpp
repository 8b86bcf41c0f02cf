// phasequant: semiclassical bound-state spectra, classical wavefunctions,
// and the relativistic funnel-potential machinery, from one command line.

#include "phasequant/cornell.hpp"
#include "phasequant/errors.hpp"
#include "phasequant/log.hpp"
#include "phasequant/model.hpp"
#include "phasequant/oracle.hpp"
#include "phasequant/quantizer.hpp"
#include "phasequant/version.hpp"
#include "phasequant/wavefunction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace phasequant;

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// problem construction shared by spectrum / wavefunction / verify

struct ProblemOptions {
    std::string potential = "harmonic";
    std::string expr;
    double omega = 1.0;
    double e2 = 1.0;
    double kappa = 0.2;
    double alpha_tilde = 0.5;
    std::optional<double> alpha_s;
    double mass = 1.0;
    double hbar = 1.0;
    std::optional<int> l;
    std::vector<double> window;
    double rel_tol = 0.0; // 0 = keep defaults
};

void add_problem_flags(CLI::App* cmd, ProblemOptions& opt) {
    cmd->add_option("--potential", opt.potential,
                    "harmonic | coulomb | linear | cornell | custom");
    cmd->add_option("--potential-expr", opt.expr,
                    "expression in x (full line) or r (half line); implies custom");
    cmd->add_option("--omega", opt.omega, "harmonic frequency");
    cmd->add_option("--e2", opt.e2, "Coulomb strength e^2");
    cmd->add_option("--kappa", opt.kappa, "string tension");
    cmd->add_option("--alpha-tilde", opt.alpha_tilde, "Coulomb-like strength of the funnel");
    cmd->add_option("--alpha-s", opt.alpha_s, "sets alpha_tilde = (4/3) alpha_s");
    cmd->add_option("--mass", opt.mass, "particle mass");
    cmd->add_option("--hbar", opt.hbar, "Planck constant");
    cmd->add_option("--l", opt.l, "angular momentum (adds the radial term)");
    cmd->add_option("--window", opt.window, "scan window: two numbers")->expected(2);
    cmd->add_option("--rel-tol", opt.rel_tol, "quadrature relative tolerance");
}

void apply_config_problem(const json& cfg, ProblemOptions& opt) {
    static const std::set<std::string> known_top = {"potential", "mass", "hbar", "l",
                                                    "window", "tolerances"};
    static const std::set<std::string> known_pot = {"kind", "omega", "e2", "kappa",
                                                    "alpha_tilde", "expr"};
    for (const auto& [key, _] : cfg.items())
        if (!known_top.count(key)) throw UsageError("config: unknown field '" + key + "'");
    if (cfg.contains("potential")) {
        const json& p = cfg["potential"];
        for (const auto& [key, _] : p.items())
            if (!known_pot.count(key))
                throw UsageError("config: unknown potential field '" + key + "'");
        if (p.contains("kind")) opt.potential = p["kind"].get<std::string>();
        if (p.contains("omega")) opt.omega = p["omega"].get<double>();
        if (p.contains("e2")) opt.e2 = p["e2"].get<double>();
        if (p.contains("kappa")) opt.kappa = p["kappa"].get<double>();
        if (p.contains("alpha_tilde")) opt.alpha_tilde = p["alpha_tilde"].get<double>();
        if (p.contains("expr")) opt.expr = p["expr"].get<std::string>();
    }
    if (cfg.contains("mass")) opt.mass = cfg["mass"].get<double>();
    if (cfg.contains("hbar")) opt.hbar = cfg["hbar"].get<double>();
    if (cfg.contains("l")) opt.l = cfg["l"].get<int>();
    if (cfg.contains("window")) {
        opt.window = cfg["window"].get<std::vector<double>>();
        if (opt.window.size() != 2) throw UsageError("config: window needs two numbers");
    }
    if (cfg.contains("tolerances")) {
        static const std::set<std::string> known_tol = {"root_rel", "quad_rel", "energy_rel"};
        for (const auto& [key, _] : cfg["tolerances"].items())
            if (!known_tol.count(key))
                throw UsageError("config: unknown tolerances field '" + key + "'");
    }
}

Tolerances tolerances_from(const json* cfg, double rel_tol_flag) {
    Tolerances tol;
    if (cfg && cfg->contains("tolerances")) {
        const json& t = (*cfg)["tolerances"];
        if (t.contains("root_rel")) tol.root_rel = t["root_rel"].get<double>();
        if (t.contains("quad_rel")) tol.quad_rel = t["quad_rel"].get<double>();
        if (t.contains("energy_rel")) tol.energy_rel = t["energy_rel"].get<double>();
    }
    if (rel_tol_flag > 0.0) tol.quad_rel = rel_tol_flag;
    return tol;
}

QuantProblem build_problem(const ProblemOptions& opt, const json* cfg) {
    std::string kind = opt.potential;
    if (!opt.expr.empty()) kind = "custom";
    double alpha_tilde = opt.alpha_tilde;
    if (opt.alpha_s) alpha_tilde = 4.0 / 3.0 * (*opt.alpha_s);

    std::optional<Potential> pot;
    if (kind == "harmonic") pot = Potential::harmonic(opt.mass, opt.omega);
    else if (kind == "coulomb") pot = Potential::coulomb(opt.e2);
    else if (kind == "linear") pot = Potential::linear(opt.kappa);
    else if (kind == "cornell") pot = Potential::funnel(alpha_tilde, opt.kappa);
    else if (kind == "custom") {
        if (opt.expr.empty()) throw UsageError("custom potential needs --potential-expr");
        Expr expr = Expr::parse(opt.expr);
        const Domain domain = expr.variable() == "r" ? Domain::half_line : Domain::full_line;
        pot = Potential::custom(std::move(expr), domain);
    } else {
        throw UsageError("unknown potential '" + kind + "'");
    }

    QuantProblem problem(std::move(*pot), opt.mass, opt.hbar, opt.l);
    if (!opt.window.empty()) problem.set_window(opt.window[0], opt.window[1]);
    problem.tol = tolerances_from(cfg, opt.rel_tol);
    return problem;
}

json problem_config_json(const ProblemOptions& opt, const QuantProblem& problem) {
    json pot;
    pot["kind"] = problem.potential.kind_name();
    if (!opt.expr.empty()) pot["expr"] = opt.expr;
    if (pot["kind"] == "harmonic") pot["omega"] = opt.omega;
    if (pot["kind"] == "coulomb") pot["e2"] = opt.e2;
    if (pot["kind"] == "linear") pot["kappa"] = opt.kappa;
    if (pot["kind"] == "cornell") {
        pot["alpha_tilde"] = opt.alpha_s ? 4.0 / 3.0 * (*opt.alpha_s) : opt.alpha_tilde;
        pot["kappa"] = opt.kappa;
    }
    json cfg;
    cfg["potential"] = pot;
    cfg["mass"] = problem.mass;
    cfg["hbar"] = problem.hbar;
    if (problem.angular) cfg["l"] = *problem.angular;
    cfg["window"] = {problem.window_lo, problem.window_hi};
    cfg["tolerances"] = {{"root_rel", problem.tol.root_rel},
                         {"quad_rel", problem.tol.quad_rel},
                         {"energy_rel", problem.tol.energy_rel}};
    return cfg;
}

// ---------------------------------------------------------------------------
// output plumbing

struct OutputOptions {
    std::string format = "json";
    std::string out;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opt) {
    cmd->add_option("--format", opt.format, "json | csv");
    cmd->add_option("--out", opt.out, "write to this path instead of stdout");
}

void emit(const OutputOptions& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output path '" + opt.out + "'");
    f << text;
}

json envelope(const std::string& command, json config) {
    json doc;
    doc["tool"] = "phasequant";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["config"] = std::move(config);
    return doc;
}

std::optional<json> load_config(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file '" + path + "'");
    json cfg;
    try {
        f >> cfg;
    } catch (const std::exception& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

// deterministic uniforms, independent of the standard library's
// distribution implementations
struct SweepRng {
    std::mt19937_64 gen;
    explicit SweepRng(unsigned long long seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        const double u = (gen() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(uniform(0.0, hi - lo + 1.0));
    }
};

// ---------------------------------------------------------------------------
// commands

int run_spectrum(const ProblemOptions& popt, const OutputOptions& oopt,
                 const std::string& config_path, int n_max) {
    if (oopt.format != "json")
        throw UsageError("spectrum: only json output is available");
    const auto cfg = load_config(config_path);
    ProblemOptions resolved = popt;
    if (cfg) apply_config_problem(*cfg, resolved);
    const QuantProblem problem = build_problem(resolved, cfg ? &*cfg : nullptr);

    const SpectrumResult result = spectrum(problem, n_max);
    if (result.levels.empty() && result.error)
        throw DomainError("no bound states: " + *result.error);

    json doc = envelope("spectrum", problem_config_json(resolved, problem));
    doc["config"]["n_max"] = n_max;
    json levels = json::array();
    for (const SpectrumEntry& e : result.levels)
        levels.push_back({{"n", e.n}, {"energy", e.energy}, {"phase_residual", e.phase_residual}});
    doc["levels"] = std::move(levels);
    if (result.error) {
        doc["error"] = {{"type", "numerical"},
                        {"message", *result.error},
                        {"failed_n", result.failed_n}};
        emit(oopt, doc.dump(2) + "\n");
        return 2;
    }
    emit(oopt, doc.dump(2) + "\n");
    return 0;
}

int run_wavefunction(const ProblemOptions& popt, const OutputOptions& oopt,
                     const std::string& config_path, int n, int samples) {
    const auto cfg = load_config(config_path);
    ProblemOptions resolved = popt;
    if (cfg) apply_config_problem(*cfg, resolved);
    const QuantProblem problem = build_problem(resolved, cfg ? &*cfg : nullptr);

    const SpectrumEntry entry = quantize_2tp(problem, n);
    const PiecewiseWavefunction wf = build_classical_wf(problem, entry);

    // sample the cut plus half a cut-width of tail on each side
    const double L = wf.x2 - wf.x1;
    const double lo = std::max(problem.window_lo, wf.x1 - 0.5 * L);
    const double hi = std::min(problem.window_hi, wf.x2 + 0.5 * L);

    if (oopt.format == "csv") {
        std::ostringstream os;
        os << "x,psi,region\n";
        for (int i = 0; i < samples; ++i) {
            const double x = lo + (hi - lo) * i / (samples - 1.0);
            os << format_double(x) << ',' << format_double(eval_wf(wf, x)) << ','
               << wf_region_name(wf_region(wf, x)) << '\n';
        }
        emit(oopt, os.str());
        return 0;
    }

    json doc = envelope("wavefunction", problem_config_json(resolved, problem));
    doc["config"]["n"] = n;
    doc["config"]["samples"] = samples;
    doc["level"] = {{"n", entry.n},
                    {"energy", entry.energy},
                    {"phase_residual", entry.phase_residual},
                    {"x1", wf.x1},
                    {"x2", wf.x2},
                    {"phase_span", wf.phase_span},
                    {"norm_constant", wf.norm_c},
                    {"nodes", node_count(wf)}};
    json rows = json::array();
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1.0);
        rows.push_back({{"x", x},
                        {"psi", eval_wf(wf, x)},
                        {"region", wf_region_name(wf_region(wf, x))}});
    }
    doc["samples"] = std::move(rows);
    emit(oopt, doc.dump(2) + "\n");
    return 0;
}

struct CornellOptions {
    double mass = 0.0;
    double alpha_tilde = 0.5;
    std::optional<double> alpha_s;
    double kappa = 0.2;
    int l = 0;
    int l_max = -1;
    int n_r_max = 3;
    std::optional<double> shift_c;

    CornellParams params() const {
        CornellParams p;
        p.m = mass;
        p.alpha_tilde = alpha_s ? 4.0 / 3.0 * (*alpha_s) : alpha_tilde;
        p.kappa = kappa;
        p.l = l;
        p.validate();
        return p;
    }
};

void add_cornell_flags(CLI::App* cmd, CornellOptions& opt) {
    cmd->add_option("--mass", opt.mass, "quark mass (GeV)");
    cmd->add_option("--alpha-tilde", opt.alpha_tilde, "(4/3) alpha_s");
    cmd->add_option("--alpha-s", opt.alpha_s, "strong coupling; sets alpha_tilde");
    cmd->add_option("--kappa", opt.kappa, "string tension (GeV^2)");
    cmd->add_option("--l", opt.l, "orbital momentum");
    cmd->add_option("--l-max", opt.l_max, "table rows up to this l (default: --l)");
    cmd->add_option("--n-r-max", opt.n_r_max, "radial levels 0..n_r_max");
    cmd->add_option("--shift-c", opt.shift_c, "adds an M^2 = E^2 - C^2 column");
}

json cornell_config_json(const CornellOptions& opt) {
    const CornellParams p = opt.params();
    json cfg;
    cfg["mass"] = p.m;
    cfg["alpha_tilde"] = p.alpha_tilde;
    cfg["kappa"] = p.kappa;
    cfg["l"] = p.l;
    cfg["l_max"] = opt.l_max < 0 ? p.l : opt.l_max;
    cfg["n_r_max"] = opt.n_r_max;
    if (opt.shift_c) cfg["shift_c"] = *opt.shift_c;
    return cfg;
}

int run_cornell(const CornellOptions& copt, const OutputOptions& oopt) {
    const CornellParams params = copt.params();
    const int l_max = copt.l_max < 0 ? params.l : copt.l_max;
    if (l_max < params.l) throw UsageError("cornell: --l-max must be >= --l");

    std::vector<ReggeRow> rows;
    {
        CornellParams base = params;
        base.l = 0; // regge_table loops l itself; keep rows from --l upward
        auto all = regge_table(base, copt.n_r_max, l_max, copt.shift_c);
        for (const ReggeRow& row : all)
            if (row.l >= params.l) rows.push_back(row);
    }

    if (oopt.format == "csv") {
        std::ostringstream os;
        os << "n_r,l,E_squared,E" << (copt.shift_c ? ",M_squared" : "") << "\n";
        for (const ReggeRow& row : rows) {
            os << row.n_r << ',' << row.l << ',' << format_double(row.E_squared) << ','
               << format_double(std::sqrt(row.E_squared));
            if (row.m_squared_shifted) os << ',' << format_double(*row.m_squared_shifted);
            os << '\n';
        }
        emit(oopt, os.str());
        return 0;
    }

    json doc = envelope("cornell", cornell_config_json(copt));
    json table = json::array();
    for (const ReggeRow& row : rows) {
        json r = {{"n_r", row.n_r},
                  {"l", row.l},
                  {"E_squared", row.E_squared},
                  {"E", std::sqrt(row.E_squared)}};
        if (row.m_squared_shifted) r["M_squared"] = *row.m_squared_shifted;
        table.push_back(std::move(r));
    }
    doc["table"] = std::move(table);
    emit(oopt, doc.dump(2) + "\n");
    return 0;
}

int run_identity_check(const OutputOptions& oopt, int sweeps, unsigned long long seed) {
    if (oopt.format != "json")
        throw UsageError("identity-check: only json output is available");
    SweepRng rng(seed);
    json rows = json::array();
    double max_residual = 0.0;
    double max_normalized = 0.0;
    for (int i = 0; i < sweeps; ++i) {
        CornellParams p;
        p.kappa = rng.uniform(0.1, 0.5);
        p.alpha_tilde = rng.uniform(0.0, 1.0);
        p.m = rng.uniform(0.0, 1.0);
        p.l = rng.uniform_int(0, 3);
        const double e_thr = cornell_positive_cut_threshold(p);
        const double E = 1.2 * e_thr;
        const double analytic =
            std::numbers::pi * (E * E / (8.0 * p.kappa) + p.alpha_tilde - p.lambda());
        const double residual = contour_identity_residual(p, E);
        const double normalized = residual / std::max(1.0, std::abs(analytic));
        max_residual = std::max(max_residual, residual);
        max_normalized = std::max(max_normalized, normalized);
        rows.push_back({{"kappa", p.kappa},
                        {"alpha_tilde", p.alpha_tilde},
                        {"m", p.m},
                        {"l", p.l},
                        {"E", E},
                        {"analytic", analytic},
                        {"residual", residual},
                        {"normalized_residual", normalized}});
    }
    json doc = envelope("identity-check", {{"sweeps", sweeps}, {"seed", seed}});
    doc["sweeps"] = std::move(rows);
    doc["max_residual"] = max_residual;
    doc["max_normalized_residual"] = max_normalized;
    emit(oopt, doc.dump(2) + "\n");
    return 0;
}

int run_verify(const ProblemOptions& popt, const OutputOptions& oopt,
               const std::string& config_path, int n_max, double grid_h, bool relativistic,
               const CornellOptions& copt) {
    if (oopt.format != "json") throw UsageError("verify: only json output is available");

    if (relativistic) {
        // oracle on the relativistic radial equation vs the closed form
        const CornellParams base = copt.params();
        const int l_max = copt.l_max < 0 ? base.l : copt.l_max;
        json rows = json::array();
        double max_rel = 0.0, max_grid_resid = 0.0;
        for (int l = base.l; l <= l_max; ++l) {
            CornellParams p = base;
            p.l = l;
            const QFunction q = oracle_q(p);
            const double e_top = cornell_spectrum_closed_form(p, n_max + 2).E * 1.3;
            const GridSpec grid = auto_grid(q, e_top, 1e-8, 400.0, true, grid_h);
            const auto oracle =
                oracle_spectrum(q, grid, n_max, 1e-4, e_top);
            for (int n_r = 0; n_r <= n_max; ++n_r) {
                const CornellLevel cf = cornell_spectrum_closed_form(p, n_r);
                const OracleLevel& ol = oracle[static_cast<std::size_t>(n_r)];
                const double dev = std::abs(cf.E - ol.energy);
                const double rel = dev / ol.energy;
                max_rel = std::max(max_rel, rel);
                max_grid_resid = std::max(max_grid_resid, ol.grid_residual / ol.energy);
                rows.push_back({{"l", l},
                                {"n_r", n_r},
                                {"E_closed_form", cf.E},
                                {"E_squared_closed_form", cf.E_squared},
                                {"E_oracle", ol.energy},
                                {"E_squared_oracle", ol.energy * ol.energy},
                                {"grid_residual", ol.grid_residual},
                                {"abs_dev", dev},
                                {"rel_dev", rel}});
            }
        }
        json cfg = cornell_config_json(copt);
        cfg["n_r_max"] = n_max;
        cfg["grid_h"] = grid_h;
        cfg["relativistic"] = true;
        json doc = envelope("verify", std::move(cfg));
        doc["rows"] = std::move(rows);
        doc["summary"] = {{"max_rel_dev", max_rel},
                          {"max_grid_residual_over_E", max_grid_resid},
                          {"note", "closed-form exactness is under test, not assumed"}};
        emit(oopt, doc.dump(2) + "\n");
        return 0;
    }

    const auto cfg_file = load_config(config_path);
    ProblemOptions resolved = popt;
    if (cfg_file) apply_config_problem(*cfg_file, resolved);
    const QuantProblem problem = build_problem(resolved, cfg_file ? &*cfg_file : nullptr);

    const SpectrumResult semi = spectrum(problem, n_max);
    if (semi.error)
        throw NumericalError("verify: semiclassical side failed at n=" +
                             std::to_string(semi.failed_n) + ": " + *semi.error);

    const QFunction q = oracle_q(problem);
    const double e0 = semi.levels.front().energy;
    const double e_last = semi.levels.back().energy;
    const double e_lo = e0 - std::max(1.0, 0.5 * std::abs(e0));
    const double e_hi = e_last + std::max(1.0, 0.75 * std::abs(e_last));
    const bool half_line = problem.potential.domain() == Domain::half_line;
    const GridSpec grid =
        auto_grid(q, e_hi, half_line ? 1e-8 : problem.window_lo, problem.window_hi,
                  half_line, grid_h);
    const auto oracle = oracle_spectrum(q, grid, n_max, e_lo, e_hi);

    std::vector<double> semi_energies;
    for (const SpectrumEntry& e : semi.levels) semi_energies.push_back(e.energy);
    const CompareReport report = compare_report(semi_energies, oracle);

    json doc = envelope("verify", problem_config_json(resolved, problem));
    doc["config"]["n_max"] = n_max;
    doc["config"]["grid_h"] = grid_h;
    doc["config"]["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"h", grid.h}};
    json semi_json = json::array(), oracle_json = json::array(), dev_json = json::array();
    for (const SpectrumEntry& e : semi.levels)
        semi_json.push_back({{"n", e.n}, {"energy", e.energy}, {"phase_residual", e.phase_residual}});
    for (const OracleLevel& e : oracle)
        oracle_json.push_back(
            {{"index", e.index}, {"energy", e.energy}, {"grid_residual", e.grid_residual}});
    for (const DeviationRow& row : report.rows)
        dev_json.push_back({{"index", row.index},
                            {"semiclassical", row.semiclassical},
                            {"oracle", row.oracle},
                            {"abs_dev", row.abs_dev},
                            {"rel_dev", row.rel_dev}});
    doc["semiclassical"] = std::move(semi_json);
    doc["oracle"] = std::move(oracle_json);
    doc["deviations"] = {{"rows", std::move(dev_json)},
                         {"max_abs_dev", report.max_abs_dev},
                         {"max_rel_dev", report.max_rel_dev},
                         {"mean_abs_dev", report.mean_abs_dev}};
    doc["note"] = "oracle uses the exact l(l+1) centrifugal term";
    emit(oopt, doc.dump(2) + "\n");
    return 0;
}

json error_json(const std::string& type, const std::string& message) {
    json doc;
    doc["tool"] = "phasequant";
    doc["version"] = kVersion;
    doc["error"] = {{"type", type}, {"message", message}};
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical exact-quantization toolkit"};
    app.require_subcommand(1);

    ProblemOptions popt;
    OutputOptions oopt;
    std::string config_path;
    unsigned long long seed = 0;

    int n_max = 5;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "bound-state energies");
    add_problem_flags(cmd_spectrum, popt);
    add_output_flags(cmd_spectrum, oopt);
    cmd_spectrum->add_option("--config", config_path, "JSON config file");
    cmd_spectrum->add_option("--n-max", n_max, "levels 0..n_max");
    cmd_spectrum->add_option("--seed", seed, "accepted for config echo symmetry");

    int wf_n = 0, wf_samples = 512;
    auto* cmd_wf = app.add_subcommand("wavefunction", "piecewise classical wavefunction");
    add_problem_flags(cmd_wf, popt);
    add_output_flags(cmd_wf, oopt);
    cmd_wf->add_option("--config", config_path, "JSON config file");
    cmd_wf->add_option("--n", wf_n, "level index");
    cmd_wf->add_option("--samples", wf_samples, "sample count")->check(CLI::Range(2, 10000000));

    CornellOptions copt;
    auto* cmd_cornell = app.add_subcommand("cornell", "relativistic funnel spectrum table");
    add_cornell_flags(cmd_cornell, copt);
    add_output_flags(cmd_cornell, oopt);
    int vi_sweeps = 20;
    auto* cmd_cornell_vi =
        cmd_cornell->add_subcommand("verify-identity", "contour identity sweep");
    cmd_cornell_vi->add_option("--sweeps", vi_sweeps, "random parameter sets");
    cmd_cornell_vi->add_option("--seed", seed, "sweep seed");

    int ic_sweeps = 20;
    auto* cmd_identity = app.add_subcommand("identity-check", "contour identity sweep");
    add_output_flags(cmd_identity, oopt);
    cmd_identity->add_option("--sweeps", ic_sweeps, "random parameter sets");
    cmd_identity->add_option("--seed", seed, "sweep seed");

    int verify_n_max = 3;
    double grid_h = 1e-3;
    bool relativistic = false;
    auto* cmd_verify = app.add_subcommand("verify", "semiclassical vs finite-difference oracle");
    add_problem_flags(cmd_verify, popt);
    add_cornell_flags(cmd_verify, copt);
    add_output_flags(cmd_verify, oopt);
    cmd_verify->add_option("--config", config_path, "JSON config file");
    cmd_verify->add_option("--n-max", verify_n_max, "levels 0..n_max");
    cmd_verify->add_option("--grid-h", grid_h, "oracle grid step");
    cmd_verify->add_flag("--relativistic", relativistic,
                         "verify the relativistic funnel equation against its closed form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e); // help -> 0, usage errors -> nonzero
    }

    try {
        if (*cmd_spectrum) return run_spectrum(popt, oopt, config_path, n_max);
        if (*cmd_wf) return run_wavefunction(popt, oopt, config_path, wf_n, wf_samples);
        if (*cmd_cornell) {
            if (*cmd_cornell_vi) return run_identity_check(oopt, vi_sweeps, seed);
            return run_cornell(copt, oopt);
        }
        if (*cmd_identity) return run_identity_check(oopt, ic_sweeps, seed);
        if (*cmd_verify)
            return run_verify(popt, oopt, config_path, verify_n_max, grid_h, relativistic, copt);
    } catch (const UsageError& e) {
        emit(oopt, error_json("usage", e.what()).dump(2) + "\n");
        return 1;
    } catch (const DomainError& e) {
        emit(oopt, error_json("domain", e.what()).dump(2) + "\n");
        return 3;
    } catch (const NumericalError& e) {
        emit(oopt, error_json("numerical", e.what()).dump(2) + "\n");
        return 2;
    } catch (const std::exception& e) {
        emit(oopt, error_json("internal", e.what()).dump(2) + "\n");
        return 2;
    }
    return 1;
}
