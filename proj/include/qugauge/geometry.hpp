// geometry.hpp — geometric phases, energy variance, and Fubini–Study distance
// Over one revival period T = 2*pi/(omega2-omega1) each doublet member returns
// to itself up to the overall phase varphi = -omega1 T; subtracting the
// accumulated dynamical phase leaves the geometric remainder
//   beta_phi = 2*pi sin^2(theta),  beta_psi = 2*pi cos^2(theta),
// which always add up to 2*pi. The energy variance w_ps^2 sets the speed of
// the ray: ds/dt = 2*sqrt(var) in the Fubini–Study metric, matching the arc
// swept on the Bloch sphere at fixed polar angle 2*theta.

#pragma once

#include <cmath>
#include <stdexcept>

#include "qugauge/dynamics.hpp"
#include "qugauge/linalg.hpp"
#include "qugauge/oracle.hpp"

namespace qugauge {

// ------------------------------ phases ---------------------------------------

struct PhaseReport {
    double beta_phi{0.0};
    double beta_psi{0.0};
    double varphi{0.0};  // overall phase after one period, kept unwrapped
    double period{0.0};
};

// Overall phase after one period, -2*pi*omega1/(omega2-omega1), unwrapped.
inline double overall_phase(const SpectrumConfig& s) { return -s.omega1 * period(s); }

inline double berry_phase_closed(const SpectrumConfig& s, const MixingConfig& m,
                                 StateSelect which) {
    validate(m);
    if (is_degenerate(s)) throw std::domain_error("berry_phase_closed: degenerate spectrum");
    const double sin2 = std::sin(m.theta) * std::sin(m.theta);
    return which == StateSelect::Phi ? 2.0 * pi * sin2 : 2.0 * pi * (1.0 - sin2);
}

inline PhaseReport phase_report(const SpectrumConfig& s, const MixingConfig& m) {
    PhaseReport r;
    r.period = period(s);
    r.varphi = overall_phase(s);
    r.beta_phi = berry_phase_closed(s, m, StateSelect::Phi);
    r.beta_psi = berry_phase_closed(s, m, StateSelect::Psi);
    return r;
}

// Quadrature route: varphi + Simpson integral of <xi(t)|H|xi(t)> over one
// period, the integrand evaluated through the live states at every node.
inline double berry_phase_quadrature(const SpectrumConfig& s, const MixingConfig& m,
                                     StateSelect which, std::size_t panels = 0) {
    if (is_degenerate(s)) throw std::domain_error("berry_phase_quadrature: degenerate spectrum");
    const double t_period = period(s);
    if (panels == 0) panels = default_panels(s, 0.0, t_period);
    const Op2 h_op = build_hamiltonian(s);
    const auto integrand = [&](double tau) {
        const Ket2& xi = select(doublet_at(s, m, tau), which);
        return inner(xi, Ket2(h_op * xi)).real();
    };
    return overall_phase(s) + simpson(integrand, 0.0, t_period, panels);
}

// Fully numerical route: the derivative inside <xi|i d/dt xi> taken by central
// difference as well. Looser by construction; gate near 1e-6.
inline double berry_phase_numeric(const SpectrumConfig& s, const MixingConfig& m,
                                  StateSelect which, std::size_t panels = 0, double h = 1e-5) {
    if (is_degenerate(s)) throw std::domain_error("berry_phase_numeric: degenerate spectrum");
    const double t_period = period(s);
    if (panels == 0) panels = default_panels(s, 0.0, t_period);
    const auto xi_at = [&](double tau) -> Ket2 { return select(doublet_at(s, m, tau), which); };
    const auto integrand = [&](double tau) {
        const Ket2 dxi = central_diff(xi_at, tau, h);
        return (Complex(0, 1) * inner(xi_at(tau), dxi)).real();
    };
    return overall_phase(s) + simpson(integrand, 0.0, t_period, panels);
}

// ---------------------------- energy variance --------------------------------

struct VarianceReport {
    double dw2{0.0};      // w_ps^2, the common variance of both doublet members
    double dw2_phi{0.0};  // <H^2> - <H>^2 through live moments, phi
    double dw2_psi{0.0};  // same for psi
};

// Variance of H in either doublet member; identical for both and equal to
// w_ps^2. The moment routes are computed independently and checked here.
inline VarianceReport energy_variance(const SpectrumConfig& s, const MixingConfig& m) {
    const OmegaElements w = omega_elements(s, m);
    const Op2 h_op = build_hamiltonian(s);
    const Op2 h2 = h_op * h_op;
    const Doublet d = build_mixed_basis(m);
    const auto moment_var = [&](const Ket2& xi) {
        const double m1 = inner(xi, Ket2(h_op * xi)).real();
        const double m2 = inner(xi, Ket2(h2 * xi)).real();
        return m2 - m1 * m1;
    };
    VarianceReport r;
    r.dw2 = w.w_ps * w.w_ps;
    r.dw2_phi = moment_var(d.phi);
    r.dw2_psi = moment_var(d.psi);
    const double tol = 1e-12 * std::max({1.0, std::abs(r.dw2_phi), std::abs(r.dw2_psi)});
    if (std::abs(r.dw2_phi - r.dw2) > tol || std::abs(r.dw2_psi - r.dw2) > tol) {
        throw std::logic_error("energy_variance: moment route disagrees with w_ps^2");
    }
    return r;
}

// ------------------------- invariant path length -----------------------------

// s = 2 * integral of sqrt(var H) dt, in closed form (2 |w_ps| span) and by
// Simpson quadrature over the live states.
struct AaInvariant {
    double closed{0.0};
    double quadrature{0.0};
};

inline AaInvariant aa_invariant(const SpectrumConfig& s, const MixingConfig& m, double t0,
                                double t1, std::size_t panels = 0) {
    validate(s);
    validate(m);
    if (!is_finite(t0) || !is_finite(t1)) {
        throw std::invalid_argument("aa_invariant: non-finite bounds");
    }
    const VarianceReport var = energy_variance(s, m);
    if (panels == 0) panels = default_panels(s, t0, t1);
    const Op2 h_op = build_hamiltonian(s);
    const Op2 h2 = h_op * h_op;
    const auto integrand = [&](double tau) {
        const Ket2& xi = doublet_at(s, m, tau).phi;
        const double m1 = inner(xi, Ket2(h_op * xi)).real();
        const double m2 = inner(xi, Ket2(h2 * xi)).real();
        return 2.0 * std::sqrt(std::max(0.0, m2 - m1 * m1));
    };
    return {2.0 * std::sqrt(var.dw2) * (t1 - t0), simpson(integrand, t0, t1, panels)};
}

// --------------------------- overlap expansion --------------------------------

// Short-time overlap decay: to leading order both the same-state defect
// 1 - |<xi(t)|xi(t+dt)>|^2 and the cross term |<phi(t)|psi(t+dt)>|^2 equal
// dt^2 w_ps^2. Measured through live inner products.
struct OverlapExpansion {
    double same_state_defect{0.0};
    double cross_term{0.0};
    double predicted{0.0};  // dt^2 w_ps^2
};

inline OverlapExpansion overlap_expansion_check(const SpectrumConfig& s, const MixingConfig& m,
                                                double t, double dt,
                                                StateSelect which = StateSelect::Phi) {
    if (!(dt > 0.0) || !is_finite(dt)) {
        throw std::domain_error("overlap_expansion_check: dt must be positive");
    }
    const OmegaElements w = omega_elements(s, m);
    const Doublet now = doublet_at(s, m, t);
    const Doublet later = doublet_at(s, m, t + dt);
    OverlapExpansion r;
    const Complex same = inner(select(now, which), select(later, which));
    const Complex cross = inner(now.phi, later.psi);
    r.same_state_defect = 1.0 - std::norm(same);
    r.cross_term = std::norm(cross);
    r.predicted = dt * dt * w.w_ps * w.w_ps;
    return r;
}

// --------------------------- Fubini–Study speed -------------------------------

// Instantaneous ray speed and accumulated length: ds/dt = 2 w_ps, constant
// along the evolution, so s = 2 w_ps (t1 - t0).
struct FsPoint {
    double ds_dt{0.0};
    double s_accum{0.0};
};

inline FsPoint fs_distance(const SpectrumConfig& s, const MixingConfig& m, double t0,
                           double t1) {
    validate(s);
    validate(m);
    if (!is_finite(t0) || !is_finite(t1)) {
        throw std::invalid_argument("fs_distance: non-finite bounds");
    }
    const OmegaElements w = omega_elements(s, m);
    FsPoint p;
    p.ds_dt = 2.0 * w.w_ps;
    p.s_accum = p.ds_dt * (t1 - t0);

    // Consistency against the defining overlap form ds^2 = 4 (1 - |<xi|xi+dt>|^2).
    const double dt = 1e-3 / std::max(1.0, std::abs(gap(s)));
    const OverlapExpansion ov = overlap_expansion_check(s, m, t0, dt);
    const double ds2 = p.ds_dt * dt * p.ds_dt * dt;
    if (std::abs(ds2 - 4.0 * ov.same_state_defect) > dt * dt * dt) {
        throw std::logic_error("fs_distance: overlap form of ds^2 violated");
    }
    // |s| must agree with the variance route.
    const AaInvariant aa = aa_invariant(s, m, t0, t1, 2);  // closed member only
    if (std::abs(std::abs(p.s_accum) - std::abs(aa.closed)) >
        1e-12 * std::max(1.0, std::abs(aa.closed))) {
        throw std::logic_error("fs_distance: disagrees with the variance route");
    }
    return p;
}

// --------------------------- Bloch-sphere arc --------------------------------

// Arc length swept on the Bloch sphere, integral of |dr/dt| dt with the Bloch
// vector differentiated numerically; the curve sits at fixed polar angle
// 2*theta, so this reproduces sin(2 theta) * |gap| * span = |s_accum|.
inline double sphere_correspondence(const SpectrumConfig& s, const MixingConfig& m, double t0,
                                    double t1, std::size_t panels = 0, double h = 3e-6) {
    validate(s);
    validate(m);
    if (!(h > 0.0) || !is_finite(h)) {
        throw std::domain_error("sphere_correspondence: step must be positive");
    }
    if (panels == 0) panels = default_panels(s, t0, t1);
    const auto r_at = [&](double tau) { return bloch(doublet_at(s, m, tau).phi); };
    const auto speed = [&](double tau) { return central_diff(r_at, tau, h).norm(); };
    return simpson(speed, t0, t1, panels);
}

}  // namespace qugauge
