#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "emit.hpp"
#include "qugauge/dynamics.hpp"
#include "qugauge/entropy.hpp"
#include "qugauge/gauge.hpp"
#include "qugauge/geometry.hpp"
#include "qugauge/linalg.hpp"
#include "qugauge/oracle.hpp"

namespace qugauge::cli {

namespace {

// String literals would otherwise land on the bool alternative of Value.
Value sv(const char* s) { return Value(std::string(s)); }

Value status_value(bool pass) { return sv(pass ? "pass" : "fail"); }

Value g_or_undefined(const OmegaElements& w) {
    if (w.g) return Value(*w.g);
    return sv("undefined");
}

void add_meta_keys(std::vector<std::pair<std::string, Value>>& items, const char* command) {
    items.emplace_back("meta_tool", sv("qugauge"));
    items.emplace_back("meta_version", sv(qugauge_version));
    items.emplace_back("meta_command", sv(command));
}

std::vector<double> grid_times(const TimeGrid& g) {
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(g.samples));
    for (int i = 0; i < g.samples; ++i) {
        ts.push_back(g.t0 + (g.t1 - g.t0) * static_cast<double>(i) /
                                static_cast<double>(g.samples - 1));
    }
    return ts;
}

// RK4 step resolving the fastest phase well past the integrator's own bound;
// keeps the accumulated error a few orders under the 1e-8 gate.
double oracle_step(const SpectrumConfig& s) {
    const double w_max = std::max({std::abs(s.omega1), std::abs(s.omega2), 1.0});
    return std::min(1e-3, 2e-3 / w_max);
}

// Largest eigenvalue mismatch between the two reductions of one purification.
double reduction_symmetry_defect(const Purification& pu) {
    const auto es = density_eigenvalues(pu.rho_system);
    const auto ea = density_eigenvalues(pu.rho_ancilla);
    return std::max(std::abs(es.first - ea.first), std::abs(es.second - ea.second));
}

}  // namespace

// --------------------------------- evolve ------------------------------------

CommandResult cmd_evolve(const RunConfig& cfg, const RunOptions& opt) {
    const SpectrumConfig s = cfg.active_spectrum();
    const MixingConfig m = cfg.mixing;
    const OmegaElements w = omega_elements(s, m);
    const std::vector<double> ts = grid_times(cfg.grid);
    const double step = oracle_step(s);

    Table tab;
    tab.columns = {"t",
                   "phi0_re", "phi0_im", "phi1_re", "phi1_im",
                   "psi0_re", "psi0_im", "psi1_re", "psi1_im",
                   "rk4_phi0_re", "rk4_phi0_im", "rk4_phi1_re", "rk4_phi1_im",
                   "rk4_psi0_re", "rk4_psi0_im", "rk4_psi1_re", "rk4_psi1_im",
                   "delta_phi", "delta_psi", "norm_phi", "norm_psi", "overlap"};

    // The RK4 oracle marches once from t = 0 through the grid, never restarting,
    // so every row compares the closed form against an independent trajectory.
    Doublet rk = build_mixed_basis(m);
    double t_reached = 0.0;
    double max_delta_phi = 0.0;
    double max_delta_psi = 0.0;
    double max_norm_defect = 0.0;
    double max_overlap = 0.0;
    for (const double t : ts) {
        if (t > t_reached) {
            const IntegratorConfig seg{step, t - t_reached, 0};
            rk.phi = integrate_schrodinger(s, rk.phi, seg).final_state();
            rk.psi = integrate_schrodinger(s, rk.psi, seg).final_state();
            t_reached = t;
        }
        const Doublet z = doublet_at(s, m, t);
        const double d_phi = max_abs(Ket2(z.phi - rk.phi));
        const double d_psi = max_abs(Ket2(z.psi - rk.psi));
        const double n_phi = z.phi.norm();
        const double n_psi = z.psi.norm();
        const double ov = std::abs(inner(z.phi, z.psi));
        max_delta_phi = std::max(max_delta_phi, d_phi);
        max_delta_psi = std::max(max_delta_psi, d_psi);
        max_norm_defect =
            std::max({max_norm_defect, std::abs(1.0 - n_phi), std::abs(1.0 - n_psi)});
        max_overlap = std::max(max_overlap, ov);
        tab.rows.push_back({t,
                            z.phi(0).real(), z.phi(0).imag(), z.phi(1).real(), z.phi(1).imag(),
                            z.psi(0).real(), z.psi(0).imag(), z.psi(1).real(), z.psi(1).imag(),
                            rk.phi(0).real(), rk.phi(0).imag(), rk.phi(1).real(),
                            rk.phi(1).imag(), rk.psi(0).real(), rk.psi(0).imag(),
                            rk.psi(1).real(), rk.psi(1).imag(),
                            d_phi, d_psi, n_phi, n_psi, ov});
    }

    const bool pass = max_delta_phi <= cfg.tol.evolution_oracle &&
                      max_delta_psi <= cfg.tol.evolution_oracle &&
                      max_norm_defect <= cfg.tol.orthonormality &&
                      max_overlap <= cfg.tol.orthonormality;

    if (opt.meta) add_meta_keys(tab.preamble, "evolve");
    tab.add_meta("omega1", s.omega1);
    tab.add_meta("omega2", s.omega2);
    tab.add_meta("theta", m.theta);
    tab.add_meta("gamma1", m.gamma1);
    tab.add_meta("gamma2", m.gamma2);
    if (cfg.from_medium()) {
        const auto [tt1, tt2] = transit_times(*cfg.medium);
        tab.add_meta("transit_time_1", tt1);
        tab.add_meta("transit_time_2", tt2);
    }
    tab.add_meta("w_pp", w.w_pp);
    tab.add_meta("w_ss", w.w_ss);
    tab.add_meta("w_ps", w.w_ps);
    tab.add_meta("delta_omega", w.delta);
    tab.add_meta("a0", w.a0);
    tab.add_meta("g", g_or_undefined(w));
    tab.add_meta("rk4_step", step);
    tab.add_meta("max_delta_phi", max_delta_phi);
    tab.add_meta("max_delta_psi", max_delta_psi);
    tab.add_meta("max_norm_defect", max_norm_defect);
    tab.add_meta("max_overlap", max_overlap);
    tab.add_meta("tolerance_evolution_oracle", cfg.tol.evolution_oracle);
    tab.add_meta("tolerance_orthonormality", cfg.tol.orthonormality);
    tab.add_meta("status", status_value(pass));
    return {pass ? 0 : 1, emit_table(tab, cfg.output.format)};
}

// --------------------------------- phases ------------------------------------

CommandResult cmd_phases(const RunConfig& cfg, const RunOptions& opt) {
    const SpectrumConfig s = cfg.active_spectrum();
    const MixingConfig m = cfg.mixing;
    const OmegaElements w = omega_elements(s, m);
    const double t_period = period(s);  // rejects degenerate spectra
    const double span = std::abs(t_period);
    const Tolerances& tol = cfg.tol;

    // Closed forms under test.
    const double beta_phi = berry_phase_closed(s, m, StateSelect::Phi);
    const double beta_psi = berry_phase_closed(s, m, StateSelect::Psi);
    const double varphi = -s.omega1 * span;  // overall phase at t = |T|
    const VarianceReport var = energy_variance(s, m);
    const FsPoint fs = fs_distance(s, m, 0.0, span);
    const AaInvariant aa = aa_invariant(s, m, 0.0, span);
    const double s_closed = std::abs(fs.s_accum);

    // Oracle routes: quadrature over live expectation values, a fully numeric
    // connection integral, the Bloch-sphere arc, and one RK4 period.
    const double beta_phi_q = berry_phase_quadrature(s, m, StateSelect::Phi);
    const double beta_psi_q = berry_phase_quadrature(s, m, StateSelect::Psi);
    const double beta_phi_n = berry_phase_numeric(s, m, StateSelect::Phi);
    const double beta_psi_n = berry_phase_numeric(s, m, StateSelect::Psi);
    const double arc = sphere_correspondence(s, m, 0.0, span);
    const auto bloch_phi = [&](double tau) { return bloch(doublet_at(s, m, tau).phi); };
    const double ds_dt_sphere = central_diff(bloch_phi, 0.25 * span, 3e-6).norm();

    const Doublet z0 = build_mixed_basis(m);
    const IntegratorConfig ic{oracle_step(s), span, 0};
    const Ket2 rk_final = integrate_schrodinger(s, z0.phi, ic).final_state();
    const double revival_defect = std::abs(1.0 - fidelity(z0.phi, rk_final));
    const Complex raw = inner(z0.phi, rk_final);
    const double varphi_delta = std::abs(std::exp(Complex(0, varphi)) - raw / std::abs(raw));

    const double d_bphi_q = std::abs(beta_phi - beta_phi_q);
    const double d_bpsi_q = std::abs(beta_psi - beta_psi_q);
    const double d_bphi_n = std::abs(beta_phi - beta_phi_n);
    const double d_bpsi_n = std::abs(beta_psi - beta_psi_n);
    const double sum_defect = std::abs(beta_phi_q + beta_psi_q - 2.0 * pi);
    const double dw2_delta =
        std::max(std::abs(var.dw2 - var.dw2_phi), std::abs(var.dw2 - var.dw2_psi));
    const double ds_dt_delta = std::abs(std::abs(fs.ds_dt) - ds_dt_sphere);
    const double d_s_quad = std::abs(s_closed - aa.quadrature);
    const double d_s_arc = std::abs(s_closed - arc);

    const bool pass =
        revival_defect <= tol.evolution_oracle && varphi_delta <= tol.evolution_oracle &&
        d_bphi_q <= tol.phase_quadrature && d_bpsi_q <= tol.phase_quadrature &&
        d_bphi_n <= tol.phase_numeric && d_bpsi_n <= tol.phase_numeric &&
        sum_defect <= tol.phase_sum && dw2_delta <= tol.variance_identity &&
        ds_dt_delta <= tol.sphere_arc && d_s_quad <= tol.invariant_triple &&
        d_s_arc <= tol.sphere_arc;

    Report rep;
    if (opt.meta) add_meta_keys(rep.items, "phases");
    rep.add("period", t_period);
    rep.add("period_revival_defect", revival_defect);
    rep.add("varphi_closed", varphi);
    rep.add("varphi_oracle_delta", varphi_delta);
    rep.add("w_pp", w.w_pp);
    rep.add("w_ss", w.w_ss);
    rep.add("w_ps", w.w_ps);
    rep.add("delta_omega", w.delta);
    rep.add("a0", w.a0);
    rep.add("g", g_or_undefined(w));
    rep.add("beta_phi_closed", beta_phi);
    rep.add("beta_phi_quadrature", beta_phi_q);
    rep.add("beta_phi_quadrature_delta", d_bphi_q);
    rep.add("beta_phi_numeric", beta_phi_n);
    rep.add("beta_phi_numeric_delta", d_bphi_n);
    rep.add("beta_psi_closed", beta_psi);
    rep.add("beta_psi_quadrature", beta_psi_q);
    rep.add("beta_psi_quadrature_delta", d_bpsi_q);
    rep.add("beta_psi_numeric", beta_psi_n);
    rep.add("beta_psi_numeric_delta", d_bpsi_n);
    rep.add("beta_sum_defect", sum_defect);
    rep.add("dw2_closed", var.dw2);
    rep.add("dw2_phi_moments", var.dw2_phi);
    rep.add("dw2_psi_moments", var.dw2_psi);
    rep.add("dw2_delta", dw2_delta);
    rep.add("ds_dt_closed", fs.ds_dt);
    rep.add("ds_dt_sphere", ds_dt_sphere);
    rep.add("ds_dt_delta", ds_dt_delta);
    rep.add("s_over_period_closed", s_closed);
    rep.add("s_over_period_quadrature", aa.quadrature);
    rep.add("s_over_period_quadrature_delta", d_s_quad);
    rep.add("s_over_period_sphere", arc);
    rep.add("s_over_period_sphere_delta", d_s_arc);
    rep.add("tolerance_evolution_oracle", tol.evolution_oracle);
    rep.add("tolerance_phase_quadrature", tol.phase_quadrature);
    rep.add("tolerance_phase_numeric", tol.phase_numeric);
    rep.add("tolerance_phase_sum", tol.phase_sum);
    rep.add("tolerance_variance_identity", tol.variance_identity);
    rep.add("tolerance_invariant_triple", tol.invariant_triple);
    rep.add("tolerance_sphere_arc", tol.sphere_arc);
    rep.add("status", status_value(pass));
    return {pass ? 0 : 1, emit_report(rep, cfg.output.format)};
}

// ------------------------------- gauge-check ----------------------------------

CommandResult cmd_gauge_check(const RunConfig& cfg, const RunOptions& opt) {
    if (!cfg.gauge) {
        throw ConfigError("config: gauge-check requires a gauge_function section");
    }
    const SpectrumConfig s = cfg.active_spectrum();
    const MixingConfig m = cfg.mixing;
    const OmegaElements w = omega_elements(s, m);
    const GaugeFunction gf = cfg.gauge->to_function();
    const LambdaKind kind = cfg.gauge->kind();
    const std::vector<double> ts = grid_times(cfg.grid);
    const Tolerances& tol = cfg.tol;

    double r_evolution = 0.0;
    double r_covariant = 0.0;
    double r_transformed = 0.0;
    double r_law = 0.0;
    for (const double t : ts) {
        r_evolution = std::max(r_evolution, evolution_residual(s, m, t));
        r_covariant = std::max(r_covariant, covariant_derivative_residual(s, m, t));
        r_transformed =
            std::max(r_transformed, gauge_invariance_residual(gf, s, m, t, 1e-5, kind));
        r_law = std::max(r_law, transformation_law_defect(gf, s, m, t, 1e-5, kind));
    }
    // Self-check of the supplied lambda: exact derivative vs central difference.
    // Informational only — a sampled (piecewise-linear) lambda kinks at knots.
    const double lambda_defect = derivative_defect(gf, cfg.grid.t0, cfg.grid.t1, ts.size());
    const FieldStrengthReport field =
        field_strength_is_zero(s, m, cfg.grid.t0, cfg.grid.t1, ts.size());

    const bool pass = r_evolution <= tol.gauge_residual && r_covariant <= tol.gauge_residual &&
                      r_transformed <= tol.gauge_residual &&
                      r_law <= tol.transformation_law && field.zero;

    Report rep;
    if (opt.meta) add_meta_keys(rep.items, "gauge-check");
    rep.add("omega1", s.omega1);
    rep.add("omega2", s.omega2);
    rep.add("theta", m.theta);
    rep.add("w_ps", w.w_ps);
    rep.add("a0", w.a0);
    rep.add("g", g_or_undefined(w));
    rep.add("lambda_kind", sv(kind == LambdaKind::Product ? "product" : "bare"));
    rep.add("lambda_derivative_defect", lambda_defect);
    rep.add("evolution_residual_max", r_evolution);
    rep.add("covariant_residual_max", r_covariant);
    rep.add("transformed_residual_max", r_transformed);
    rep.add("transformation_law_max", r_law);
    rep.add("field_a0", field.a0);
    rep.add("field_constancy_witness", field.constancy_witness);
    rep.add("field_commutator_witness", field.commutator_witness);
    rep.add("field_strength_zero", Value(field.zero));
    rep.add("tolerance_gauge_residual", tol.gauge_residual);
    rep.add("tolerance_transformation_law", tol.transformation_law);
    rep.add("status", status_value(pass));
    return {pass ? 0 : 1, emit_report(rep, cfg.output.format)};
}

// --------------------------------- entropy ------------------------------------

CommandResult cmd_entropy(const RunConfig& cfg, const RunOptions& opt) {
    const SpectrumConfig s = cfg.active_spectrum();
    const MixingConfig m = cfg.mixing;
    const std::vector<double> ts = grid_times(cfg.grid);
    const Tolerances& tol = cfg.tol;

    Table tab;
    tab.columns = {"t", "p_stay", "p_flip", "p_stay_tensor", "p_flip_tensor", "p_delta",
                   "sl_closed", "sl_tensor", "sl_delta", "symmetry_defect"};

    double max_p_delta = 0.0;
    double max_sl_delta = 0.0;
    double max_symmetry = 0.0;
    for (const double t : ts) {
        const ProbabilityPair p = transition_probabilities(s, m, t);
        const double sl = dynamic_linear_entropy(s, m, t);
        const Purification pu = purification_tensor(s, m, t, DoublingScheme::MixedPair);
        const double p_stay_tensor = pu.rho_system(0, 0).real();
        const double p_flip_tensor = pu.rho_system(1, 1).real();
        const double sl_tensor = linear_entropy(pu.rho_system);
        const double p_delta = std::max(std::abs(p.p_stay - p_stay_tensor),
                                        std::abs(p.p_flip - p_flip_tensor));
        const double sl_delta = std::abs(sl - sl_tensor);
        const double symmetry = reduction_symmetry_defect(pu);
        max_p_delta = std::max(max_p_delta, p_delta);
        max_sl_delta = std::max(max_sl_delta, sl_delta);
        max_symmetry = std::max(max_symmetry, symmetry);
        tab.rows.push_back({t, p.p_stay, p.p_flip, p_stay_tensor, p_flip_tensor, p_delta,
                            sl, sl_tensor, sl_delta, symmetry});
    }

    // Static reduction: time independent, verified once at the first grid time.
    const double static_closed = static_linear_entropy(m);
    const Purification pu0 =
        purification_tensor(s, m, ts.front(), DoublingScheme::Computational);
    const double static_tensor = linear_entropy(pu0.rho_system);
    const double static_delta = std::abs(static_closed - static_tensor);
    const double static_symmetry = reduction_symmetry_defect(pu0);

    const bool pass = max_p_delta <= tol.entropy_oracle && max_sl_delta <= tol.entropy_oracle &&
                      max_symmetry <= tol.entropy_oracle &&
                      static_delta <= tol.entropy_oracle &&
                      static_symmetry <= tol.entropy_oracle;

    if (opt.meta) add_meta_keys(tab.preamble, "entropy");
    tab.add_meta("omega1", s.omega1);
    tab.add_meta("omega2", s.omega2);
    tab.add_meta("theta", m.theta);
    tab.add_meta("static_sl_closed", static_closed);
    tab.add_meta("static_sl_tensor", static_tensor);
    tab.add_meta("static_sl_delta", static_delta);
    tab.add_meta("static_symmetry_defect", static_symmetry);
    tab.add_meta("max_p_delta", max_p_delta);
    tab.add_meta("max_sl_delta", max_sl_delta);
    tab.add_meta("max_symmetry_defect", max_symmetry);
    tab.add_meta("tolerance_entropy_oracle", tol.entropy_oracle);
    tab.add_meta("status", status_value(pass));
    return {pass ? 0 : 1, emit_table(tab, cfg.output.format)};
}

// ---------------------------------- sweep -------------------------------------

namespace {

struct SweepRow {
    std::vector<Value> cells;
    bool pass{true};
};

// Copy of the base config with one axis replaced; axis "t" is handled by the
// row builders and leaves the config untouched.
RunConfig config_at(const RunConfig& base, const std::string& axis, double v) {
    RunConfig c = base;
    if (axis == "theta") {
        c.mixing = make_mixing(v, base.mixing.gamma1, base.mixing.gamma2);
    } else if (axis == "omega1") {
        c.spectrum->omega1 = v;
    } else if (axis == "omega2") {
        c.spectrum->omega2 = v;
    } else if (axis == "n2") {
        c.medium->n2 = v;
        validate(*c.medium);
    }
    return c;
}

SweepRow sweep_phases_row(const RunConfig& c, double axis_value) {
    const SpectrumConfig s = c.active_spectrum();
    const MixingConfig m = c.mixing;
    const Tolerances& tol = c.tol;
    const double t_period = period(s);
    const double span = std::abs(t_period);

    const double beta_phi = berry_phase_closed(s, m, StateSelect::Phi);
    const double beta_psi = berry_phase_closed(s, m, StateSelect::Psi);
    const double beta_phi_q = berry_phase_quadrature(s, m, StateSelect::Phi);
    const double beta_psi_q = berry_phase_quadrature(s, m, StateSelect::Psi);
    const VarianceReport var = energy_variance(s, m);
    const FsPoint fs = fs_distance(s, m, 0.0, span);
    const AaInvariant aa = aa_invariant(s, m, 0.0, span);
    const double arc = sphere_correspondence(s, m, 0.0, span);
    const auto bloch_phi = [&](double tau) { return bloch(doublet_at(s, m, tau).phi); };
    const double rate_sphere = central_diff(bloch_phi, 0.25 * span, 3e-6).norm();

    const double d_bphi = std::abs(beta_phi - beta_phi_q);
    const double d_bpsi = std::abs(beta_psi - beta_psi_q);
    const double sum_defect = std::abs(beta_phi_q + beta_psi_q - 2.0 * pi);
    const double dw2_delta =
        std::max(std::abs(var.dw2 - var.dw2_phi), std::abs(var.dw2 - var.dw2_psi));
    const double rate_delta = std::abs(std::abs(fs.ds_dt) - rate_sphere);
    const double s_closed = std::abs(fs.s_accum);
    const double d_s_quad = std::abs(s_closed - aa.quadrature);
    const double d_s_arc = std::abs(s_closed - arc);

    SweepRow row;
    row.pass = d_bphi <= tol.phase_quadrature && d_bpsi <= tol.phase_quadrature &&
               sum_defect <= tol.phase_sum && dw2_delta <= tol.variance_identity &&
               rate_delta <= tol.sphere_arc && d_s_quad <= tol.invariant_triple &&
               d_s_arc <= tol.sphere_arc;
    row.cells = {axis_value, t_period,
                 beta_phi, beta_phi_q, d_bphi,
                 beta_psi, beta_psi_q, d_bpsi, sum_defect,
                 var.dw2, dw2_delta,
                 fs.ds_dt, rate_sphere, rate_delta,
                 s_closed, aa.quadrature, d_s_quad, arc, d_s_arc};
    return row;
}

SweepRow sweep_entropy_row(const RunConfig& c, const std::string& axis, double axis_value) {
    const SpectrumConfig s = c.active_spectrum();
    const MixingConfig m = c.mixing;
    const double t_eval = axis == "t" ? axis_value : c.grid.t1;

    const double static_closed = static_linear_entropy(m);
    const Purification pu0 =
        purification_tensor(s, m, t_eval, DoublingScheme::Computational);
    const double static_tensor = linear_entropy(pu0.rho_system);
    const ProbabilityPair p = transition_probabilities(s, m, t_eval);
    const double sl = dynamic_linear_entropy(s, m, t_eval);
    const Purification pu = purification_tensor(s, m, t_eval, DoublingScheme::MixedPair);
    const double sl_tensor = linear_entropy(pu.rho_system);

    const double static_delta = std::abs(static_closed - static_tensor);
    const double sl_delta = std::abs(sl - sl_tensor);
    const double symmetry =
        std::max(reduction_symmetry_defect(pu0), reduction_symmetry_defect(pu));

    SweepRow row;
    row.pass = static_delta <= c.tol.entropy_oracle && sl_delta <= c.tol.entropy_oracle &&
               symmetry <= c.tol.entropy_oracle;
    row.cells = {axis_value, t_eval, static_closed, static_tensor, static_delta,
                 p.p_stay, p.p_flip, sl, sl_tensor, sl_delta, symmetry};
    return row;
}

SweepRow sweep_gauge_row(const RunConfig& c, double axis_value) {
    const SpectrumConfig s = c.active_spectrum();
    const MixingConfig m = c.mixing;
    const OmegaElements w = omega_elements(s, m);
    const GaugeFunction gf = c.gauge->to_function();
    const LambdaKind kind = c.gauge->kind();

    double r_evolution = 0.0;
    double r_covariant = 0.0;
    double r_transformed = 0.0;
    double r_law = 0.0;
    for (const double t : grid_times(c.grid)) {
        r_evolution = std::max(r_evolution, evolution_residual(s, m, t));
        r_covariant = std::max(r_covariant, covariant_derivative_residual(s, m, t));
        r_transformed =
            std::max(r_transformed, gauge_invariance_residual(gf, s, m, t, 1e-5, kind));
        r_law = std::max(r_law, transformation_law_defect(gf, s, m, t, 1e-5, kind));
    }

    SweepRow row;
    row.pass = r_evolution <= c.tol.gauge_residual && r_covariant <= c.tol.gauge_residual &&
               r_transformed <= c.tol.gauge_residual && r_law <= c.tol.transformation_law;
    row.cells = {axis_value, w.a0, g_or_undefined(w),
                 r_evolution, r_covariant, r_transformed, r_law};
    return row;
}

}  // namespace

CommandResult cmd_sweep(const RunConfig& cfg, const RunOptions& opt) {
    if (!cfg.sweep) throw ConfigError("config: sweep requires a sweep section");
    const SweepSpec& sw = *cfg.sweep;
    if ((sw.axis == "omega1" || sw.axis == "omega2") && cfg.from_medium()) {
        throw ConfigError("config: sweep axis " + sw.axis + " needs a spectrum section");
    }
    if (sw.axis == "n2" && !cfg.from_medium()) {
        throw ConfigError("config: sweep axis n2 needs a medium section");
    }
    if (sw.axis == "t" && sw.target != "entropy") {
        throw ConfigError("config: sweep axis t is only valid with target entropy");
    }
    if (sw.target == "gauge" && !cfg.gauge) {
        throw ConfigError("config: sweep target gauge requires a gauge_function section");
    }

    Table tab;
    if (sw.target == "phases") {
        tab.columns = {sw.axis, "period",
                       "beta_phi_closed", "beta_phi_quadrature", "beta_phi_quadrature_delta",
                       "beta_psi_closed", "beta_psi_quadrature", "beta_psi_quadrature_delta",
                       "beta_sum_defect", "dw2_closed", "dw2_delta",
                       "ds_dt_closed", "ds_dt_sphere", "ds_dt_delta",
                       "s_over_period_closed", "s_over_period_quadrature",
                       "s_over_period_quadrature_delta", "s_over_period_sphere",
                       "s_over_period_sphere_delta"};
    } else if (sw.target == "entropy") {
        tab.columns = {sw.axis, "t_eval",
                       "static_sl_closed", "static_sl_tensor", "static_sl_delta",
                       "p_stay", "p_flip", "sl_closed", "sl_tensor", "sl_delta",
                       "symmetry_defect"};
    } else {
        tab.columns = {sw.axis, "a0", "g", "evolution_residual_max", "covariant_residual_max",
                       "transformed_residual_max", "transformation_law_max"};
    }

    // Parallel point evaluation; results land by index, so the emitted bytes do
    // not depend on the worker count. The lowest-index failure is rethrown.
    std::vector<SweepRow> rows(sw.values.size());
    std::vector<std::exception_ptr> errors(sw.values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= sw.values.size()) return;
            try {
                const double v = sw.values[i];
                const RunConfig c = config_at(cfg, sw.axis, v);
                if (sw.target == "phases") {
                    rows[i] = sweep_phases_row(c, v);
                } else if (sw.target == "entropy") {
                    rows[i] = sweep_entropy_row(c, sw.axis, v);
                } else {
                    rows[i] = sweep_gauge_row(c, v);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_workers = std::min<std::size_t>(
        sw.values.size(), static_cast<std::size_t>(std::max(1, opt.jobs)));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t k = 0; k < n_workers; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    bool pass = true;
    for (auto& row : rows) {
        pass = pass && row.pass;
        tab.rows.push_back(std::move(row.cells));
    }
    if (opt.meta) add_meta_keys(tab.preamble, "sweep");
    tab.add_meta("target", Value(sw.target));
    tab.add_meta("axis", Value(sw.axis));
    tab.add_meta("points", static_cast<long long>(sw.values.size()));
    tab.add_meta("status", status_value(pass));
    return {pass ? 0 : 1, emit_table(tab, cfg.output.format)};
}

// -------------------------------- dispatch ------------------------------------

CommandResult run_command(const std::string& name, const RunConfig& cfg,
                          const RunOptions& opt) {
    if (name == "evolve") return cmd_evolve(cfg, opt);
    if (name == "phases") return cmd_phases(cfg, opt);
    if (name == "gauge-check") return cmd_gauge_check(cfg, opt);
    if (name == "entropy") return cmd_entropy(cfg, opt);
    if (name == "sweep") return cmd_sweep(cfg, opt);
    throw ConfigError("config: unknown command \"" + name + "\"");
}

}  // namespace qugauge::cli
