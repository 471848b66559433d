// dynamics.hpp — two-level spectra, mixed orthonormal bases, closed-form evolution
// The system Hamiltonian is diagonal, H = diag(omega1, omega2). States are
// tracked as an orthonormal doublet (phi, psi) built from a mixing angle theta;
// the doublet obeys  i d/dt zeta = omega_d zeta + w_ps sigma1 zeta,  where
// omega_d = diag(w_pp, w_ss) and sigma1 acts on the doublet index.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "qugauge/linalg.hpp"

namespace qugauge {

inline constexpr double pi = std::numbers::pi;

// Distance to the nearest integer multiple of pi admitted on gamma1 - gamma2.
inline constexpr double phase_constraint_tol = 1e-9;

// |cos 2theta| below this leaves the coupling g = tan 2theta undefined.
inline constexpr double coupling_cutoff = 1e-12;

// ------------------------------- spectrum -----------------------------------

struct SpectrumConfig {
    double omega1{0.0};
    double omega2{0.0};
};

inline void validate(const SpectrumConfig& s) {
    if (!is_finite(s.omega1) || !is_finite(s.omega2)) {
        throw std::invalid_argument("SpectrumConfig: non-finite frequency");
    }
}

inline double gap(const SpectrumConfig& s) { return s.omega2 - s.omega1; }

// Degeneracy is legal input (e.g. a non-birefringent medium) but consumers
// that divide by the gap must reject it.
inline bool is_degenerate(const SpectrumConfig& s) {
    const double scale = std::max({1.0, std::abs(s.omega1), std::abs(s.omega2)});
    return std::abs(gap(s)) <= 1e-12 * scale;
}

// Revival period 2*pi/(omega2 - omega1); signed when omega2 < omega1.
inline double period(const SpectrumConfig& s) {
    validate(s);
    if (is_degenerate(s)) {
        throw std::domain_error("period: degenerate spectrum has no finite revival period");
    }
    return 2.0 * pi / gap(s);
}

inline Op2 build_hamiltonian(const SpectrumConfig& s) {
    validate(s);
    Op2 h;
    h << Complex(s.omega1, 0), Complex(0, 0),
         Complex(0, 0), Complex(s.omega2, 0);
    return require_hermitian(h);
}

// -------------------------------- mixing ------------------------------------

struct MixingConfig {
    double theta{0.0};
    double gamma1{0.0};
    double gamma2{0.0};
};

// Canonical form: theta reduced mod pi into [0, pi). The doublet at theta + pi
// is the one at theta up to an overall sign, so nothing observable changes.
inline MixingConfig canonical(MixingConfig m) {
    m.theta -= pi * std::floor(m.theta / pi);
    if (m.theta >= pi) m.theta = 0.0;  // guard the floor rounding edge
    return m;
}

// Orthogonality of the doublet requires gamma1 - gamma2 = n*pi.
inline void validate(const MixingConfig& m) {
    if (!is_finite(m.theta) || !is_finite(m.gamma1) || !is_finite(m.gamma2)) {
        throw std::invalid_argument("MixingConfig: non-finite parameter");
    }
    const double d = m.gamma1 - m.gamma2;
    if (std::abs(d - pi * std::round(d / pi)) > phase_constraint_tol) {
        throw std::invalid_argument("MixingConfig: gamma1 - gamma2 must be a multiple of pi");
    }
}

inline MixingConfig make_mixing(double theta, double gamma1 = 0.0, double gamma2 = 0.0) {
    MixingConfig m{theta, gamma1, gamma2};
    validate(m);
    return canonical(m);
}

inline bool has_real_coefficients(const MixingConfig& m) {
    return m.gamma1 == 0.0 && m.gamma2 == 0.0;
}

// +1 when gamma1 - gamma2 is an even multiple of pi, -1 when odd; this sign
// rides on the off-diagonal expectation value <phi|H|psi>.
inline double relative_phase_sign(const MixingConfig& m) {
    validate(m);
    const auto n = static_cast<long long>(std::llround((m.gamma1 - m.gamma2) / pi));
    return (n % 2 == 0) ? 1.0 : -1.0;
}

// -------------------------------- doublet -----------------------------------

// Orthonormal pair (phi, psi) treated as one object with a doublet index.
struct Doublet {
    Ket2 phi;
    Ket2 psi;
};

// Action of a 2x2 matrix on the doublet index (not on the state space).
inline Doublet apply_on_doublet(const Op2& m, const Doublet& z) {
    return {Ket2(m(0, 0) * z.phi + m(0, 1) * z.psi),
            Ket2(m(1, 0) * z.phi + m(1, 1) * z.psi)};
}

// sigma1 on the doublet index just swaps the two states.
inline Doublet doublet_sigma1(const Doublet& z) { return {z.psi, z.phi}; }

enum class StateSelect { Phi, Psi };

inline const Ket2& select(const Doublet& d, StateSelect which) {
    return which == StateSelect::Phi ? d.phi : d.psi;
}

inline StateSelect partner(StateSelect which) {
    return which == StateSelect::Phi ? StateSelect::Psi : StateSelect::Phi;
}

inline double max_abs(const Doublet& z) { return std::max(max_abs(z.phi), max_abs(z.psi)); }

inline Doublet doublet_difference(const Doublet& a, const Doublet& b) {
    return {Ket2(a.phi - b.phi), Ket2(a.psi - b.psi)};
}

//   phi = e^{i gamma1} cos(theta) |0> + e^{i gamma2} sin(theta) |1>
//   psi = -e^{i gamma2} sin(theta) |0> + e^{i gamma1} cos(theta) |1>
inline Doublet build_mixed_basis(const MixingConfig& m) {
    validate(m);
    const double c = std::cos(m.theta);
    const double s = std::sin(m.theta);
    const Complex e1 = std::exp(Complex(0, m.gamma1));
    const Complex e2 = std::exp(Complex(0, m.gamma2));
    return {make_state(e1 * c, e2 * s), make_state(-e2 * s, e1 * c)};
}

// ------------------------------- evolution ----------------------------------

// Exact propagator exp(-iHt) = diag(e^{-i omega1 t}, e^{-i omega2 t}).
inline Op2 propagator(const SpectrumConfig& s, double t) {
    validate(s);
    if (!is_finite(t)) throw std::invalid_argument("propagator: non-finite time");
    Op2 p;
    p << std::exp(Complex(0, -s.omega1 * t)), Complex(0, 0),
         Complex(0, 0), std::exp(Complex(0, -s.omega2 * t));
    return p;
}

enum class PhasePolicy { RealOnly, AllowGeneral };

// Closed-form evolution of the doublet from t = 0. The default policy accepts
// only real coefficients (gamma1 = 0 = gamma2) and uses the factored form
//   phi(t) = e^{-i omega1 t} (cos(theta)|0> + e^{-i (omega2-omega1) t} sin(theta)|1>),
//   psi(t) = e^{-i omega1 t} (-sin(theta)|0> + e^{-i (omega2-omega1) t} cos(theta)|1>);
// PhasePolicy::AllowGeneral applies the diagonal propagator to d0 directly.
inline Doublet evolve(const Doublet& d0, const SpectrumConfig& s, const MixingConfig& m,
                      double t, PhasePolicy policy = PhasePolicy::RealOnly) {
    validate(s);
    validate(m);
    if (!is_finite(t)) throw std::invalid_argument("evolve: non-finite time");
    if (!has_real_coefficients(m)) {
        if (policy == PhasePolicy::RealOnly) {
            throw std::invalid_argument(
                "evolve: general phases require PhasePolicy::AllowGeneral");
        }
        const Op2 p = propagator(s, t);
        return {Ket2(p * d0.phi), Ket2(p * d0.psi)};
    }
    const Doublet ref = build_mixed_basis(m);
    if (max_abs(doublet_difference(d0, ref)) > 1e-9) {
        throw std::invalid_argument("evolve: doublet does not match the mixing config at t = 0");
    }
    const double c = std::cos(m.theta);
    const double sn = std::sin(m.theta);
    const Complex overall = std::exp(Complex(0, -s.omega1 * t));
    const Complex rel = std::exp(Complex(0, -gap(s) * t));
    return {Ket2(overall * Ket2(Complex(c, 0), rel * sn)),
            Ket2(overall * Ket2(Complex(-sn, 0), rel * c))};
}

// Doublet at time t grown from the mixing config itself.
inline Doublet doublet_at(const SpectrumConfig& s, const MixingConfig& m, double t) {
    const PhasePolicy policy =
        has_real_coefficients(m) ? PhasePolicy::RealOnly : PhasePolicy::AllowGeneral;
    return evolve(build_mixed_basis(m), s, m, t, policy);
}

// --------------------------- expectation elements ----------------------------

// Matrix elements of H in the mixed basis:
//   w_pp = omega1 cos^2 + omega2 sin^2        (<phi|H|phi>)
//   w_ss = omega1 sin^2 + omega2 cos^2        (<psi|H|psi>)
//   w_ps = (omega2-omega1) sin(2 theta) / 2   (<phi|H|psi>, times the gamma sign)
// delta = w_ss - w_pp = (omega2-omega1) cos(2 theta), a0 = delta / 2, and the
// coupling g = tan(2 theta) = 2 w_ps / delta is left undefined (not NaN) when
// cos(2 theta) vanishes; the product g * a0 = w_ps stays finite regardless.
struct OmegaElements {
    double w_pp{0.0};
    double w_ss{0.0};
    double w_ps{0.0};
    double delta{0.0};
    double a0{0.0};
    std::optional<double> g{};
};

inline OmegaElements omega_elements(const SpectrumConfig& s, const MixingConfig& m) {
    validate(s);
    validate(m);
    const double c2 = std::cos(m.theta) * std::cos(m.theta);
    const double s2 = std::sin(m.theta) * std::sin(m.theta);
    const double cos2t = std::cos(2.0 * m.theta);
    OmegaElements w;
    w.w_pp = s.omega1 * c2 + s.omega2 * s2;
    w.w_ss = s.omega1 * s2 + s.omega2 * c2;
    w.w_ps = relative_phase_sign(m) * 0.5 * gap(s) * std::sin(2.0 * m.theta);
    w.delta = w.w_ss - w.w_pp;
    w.a0 = 0.5 * w.delta;
    if (std::abs(cos2t) > coupling_cutoff) w.g = std::tan(2.0 * m.theta);
    return w;
}

// omega_d = diag(w_pp, w_ss) on the doublet index.
inline Op2 omega_diag(const OmegaElements& w) {
    Op2 d;
    d << Complex(w.w_pp, 0), Complex(0, 0),
         Complex(0, 0), Complex(w.w_ss, 0);
    return d;
}

// H represented in the evolved mixed basis at time t, entry by entry through
// expectation values <a(t)|H|b(t)>. Numerically constant in t; the closed
// forms above are the reference it is tested against.
inline Op2 hamiltonian_in_mixed_basis(const SpectrumConfig& s, const MixingConfig& m,
                                      double t) {
    const Op2 h = build_hamiltonian(s);
    const Doublet d = doublet_at(s, m, t);
    Op2 r;
    r << inner(d.phi, Ket2(h * d.phi)), inner(d.phi, Ket2(h * d.psi)),
         inner(d.psi, Ket2(h * d.phi)), inner(d.psi, Ket2(h * d.psi));
    return r;
}

// Reconstruction H = sum_ab w_ab |a(t)><b(t)| back in the computational basis;
// equals diag(omega1, omega2) at every t.
inline Op2 hamiltonian_from_mixed(const SpectrumConfig& s, const MixingConfig& m, double t) {
    const OmegaElements w = omega_elements(s, m);
    const Doublet d = doublet_at(s, m, t);
    return w.w_pp * outer(d.phi, d.phi) + w.w_ss * outer(d.psi, d.psi) +
           w.w_ps * (outer(d.phi, d.psi) + outer(d.psi, d.phi));
}

// Max-entry residual of  i d/dt zeta - omega_d zeta - w_ps sigma1 zeta  with the
// time derivative taken by central finite difference (step h) on the closed form.
inline double evolution_residual(const SpectrumConfig& s, const MixingConfig& m, double t,
                                 double h = 1e-5) {
    if (!(h > 0.0) || !is_finite(h)) {
        throw std::domain_error("evolution_residual: step must be positive and finite");
    }
    const OmegaElements w = omega_elements(s, m);
    const Doublet zp = doublet_at(s, m, t + h);
    const Doublet zm = doublet_at(s, m, t - h);
    const Doublet z = doublet_at(s, m, t);
    const Complex ih(0, 1);
    const Ket2 dphi = (zp.phi - zm.phi) / (2.0 * h);
    const Ket2 dpsi = (zp.psi - zm.psi) / (2.0 * h);
    const Ket2 r_phi = ih * dphi - w.w_pp * z.phi - w.w_ps * z.psi;
    const Ket2 r_psi = ih * dpsi - w.w_ss * z.psi - w.w_ps * z.phi;
    return std::max(max_abs(r_phi), max_abs(r_psi));
}

}  // namespace qugauge
