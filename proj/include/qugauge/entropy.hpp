// entropy.hpp — reduced density matrices and linear entropies via state doubling
// Attaching a copy to each basis ket purifies the two-level state; tracing out
// either factor leaves a 2x2 mixed state. Two doublings are used: along the
// computational basis (the "static" reduction, time independent) and along the
// t = 0 doublet (the "dynamic" reduction, weights p_stay / p_flip). The linear
// entropy is normalized as S_L = 2 (1 - Tr rho^2), so it peaks at 1.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qugauge/dynamics.hpp"
#include "qugauge/linalg.hpp"

namespace qugauge {

// ------------------------------ density checks -------------------------------

// Eigenvalues of a hermitian 2x2 matrix, ascending, in closed form.
inline std::pair<double, double> density_eigenvalues(const Op2& rho) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho(0, 1)));
    return {0.5 * (a + d) - r, 0.5 * (a + d) + r};
}

// Hermitian, unit trace, eigenvalues >= -1e-12 — anything else is rejected.
inline const Op2& validate_density(const Op2& rho) {
    if (!is_finite(rho)) throw std::invalid_argument("validate_density: non-finite entry");
    if (hermiticity_defect(rho) > structure_tol) {
        throw std::invalid_argument("validate_density: not hermitian");
    }
    if (std::abs((rho(0, 0) + rho(1, 1)).real() - 1.0) > structure_tol) {
        throw std::invalid_argument("validate_density: trace != 1");
    }
    if (density_eigenvalues(rho).first < -1e-12) {
        throw std::invalid_argument("validate_density: negative eigenvalue");
    }
    return rho;
}

// S_L = 2 (1 - Tr rho^2); 0 for pure states, 1 for the maximally mixed state.
inline double linear_entropy(const Op2& rho) {
    validate_density(rho);
    const double purity = (rho * rho).trace().real();
    return 2.0 * (1.0 - purity);
}

// Supplementary diagnostic only: von Neumann entropy -sum lambda ln lambda.
// The quantity used throughout this library is linear_entropy above.
inline double von_neumann_entropy(const Op2& rho) {
    validate_density(rho);
    const auto [l1, l2] = density_eigenvalues(rho);
    const auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
    return term(l1) + term(l2);
}

// ------------------------------ static reduction -----------------------------

enum class Subsystem { System, Ancilla };

// Reduction of the computational doubling |i> -> |i>(x)|i~>: the evolution
// phases cancel in the trace, leaving diag(cos^2, sin^2) (swapped for psi)
// whichever subsystem is traced out.
inline Op2 reduce_static(const MixingConfig& m, StateSelect which = StateSelect::Phi,
                         Subsystem trace_out = Subsystem::Ancilla) {
    validate(m);
    (void)trace_out;  // both partial traces give the same matrix here
    const double c2 = std::cos(m.theta) * std::cos(m.theta);
    const double s2 = std::sin(m.theta) * std::sin(m.theta);
    Op2 rho = Op2::Zero();
    rho(0, 0) = which == StateSelect::Phi ? c2 : s2;
    rho(1, 1) = which == StateSelect::Phi ? s2 : c2;
    return rho;
}

// sin^2(2 theta), the linear entropy of the static reduction for either member.
inline double static_linear_entropy(const MixingConfig& m) {
    validate(m);
    const double s2t = std::sin(2.0 * m.theta);
    return s2t * s2t;
}

// --------------------------- transition amplitudes ---------------------------

// Overlaps with the t = 0 pair:
//   a_stay = <xi(0)|xi(t)> = e^{-i omega1 t} cos^2 + e^{-i omega2 t} sin^2   (phi; swapped for psi)
//   a_flip = <partner(0)|xi(t)> = sin cos (e^{-i omega2 t} - e^{-i omega1 t}),
// the flip amplitude carrying the same +-1 as <phi|H|psi> for general gammas.
struct AmplitudePair {
    Complex a_stay;
    Complex a_flip;
};

inline AmplitudePair transition_amplitudes(const SpectrumConfig& s, const MixingConfig& m,
                                           double t, StateSelect which = StateSelect::Phi) {
    validate(s);
    validate(m);
    if (!is_finite(t)) throw std::invalid_argument("transition_amplitudes: non-finite time");
    const double c = std::cos(m.theta);
    const double sn = std::sin(m.theta);
    const Complex e1 = std::exp(Complex(0, -s.omega1 * t));
    const Complex e2 = std::exp(Complex(0, -s.omega2 * t));
    const double c2 = which == StateSelect::Phi ? c * c : sn * sn;
    const double s2 = 1.0 - c2;
    return {e1 * c2 + e2 * s2, relative_phase_sign(m) * (sn * c) * (e2 - e1)};
}

// p_flip = sin^2(2 theta) sin^2((omega2-omega1) t / 2), p_stay = 1 - p_flip;
// cross-checked against the squared amplitudes on every call.
struct ProbabilityPair {
    double p_stay{1.0};
    double p_flip{0.0};
};

inline ProbabilityPair transition_probabilities(const SpectrumConfig& s, const MixingConfig& m,
                                                double t, StateSelect which = StateSelect::Phi) {
    const double s2t = std::sin(2.0 * m.theta);
    const double half_gap_t = 0.5 * gap(s) * t;
    const double sin_half = std::sin(half_gap_t);
    ProbabilityPair p;
    p.p_flip = s2t * s2t * sin_half * sin_half;
    p.p_stay = 1.0 - p.p_flip;
    const AmplitudePair a = transition_amplitudes(s, m, t, which);
    if (std::abs(p.p_stay - std::norm(a.a_stay)) > 1e-12 ||
        std::abs(p.p_flip - std::norm(a.a_flip)) > 1e-12) {
        throw std::logic_error("transition_probabilities: amplitude route disagrees");
    }
    return p;
}

// ------------------------------ dynamic reduction -----------------------------

// Reduction of the doubling attached to the t = 0 doublet: diagonal with
// weights (p_stay, p_flip) in the {xi(0), partner(0)} basis, identically for
// either traced-out subsystem.
inline Op2 reduce_dynamic(const SpectrumConfig& s, const MixingConfig& m, double t,
                          StateSelect which = StateSelect::Phi,
                          Subsystem trace_out = Subsystem::Ancilla) {
    (void)trace_out;
    const ProbabilityPair p = transition_probabilities(s, m, t, which);
    Op2 rho = Op2::Zero();
    rho(0, 0) = p.p_stay;
    rho(1, 1) = p.p_flip;
    return rho;
}

// S_L of the dynamic reduction, 4 p_stay p_flip = sin^2(2 theta) over one
// oscillation: vanishes at revivals, peaks at the half period.
inline double dynamic_linear_entropy(const SpectrumConfig& s, const MixingConfig& m, double t,
                                     StateSelect which = StateSelect::Phi) {
    const ProbabilityPair p = transition_probabilities(s, m, t, which);
    const double closed = 4.0 * p.p_stay * p.p_flip;
    const double via_rho = linear_entropy(reduce_dynamic(s, m, t, which));
    if (std::abs(closed - via_rho) > 1e-12) {
        throw std::logic_error("dynamic_linear_entropy: density route disagrees");
    }
    return closed;
}

// Express a density matrix given in the basis of an orthonormal doublet back
// in the computational basis: rho = sum_ab rho_ab |a><b|.
inline Op2 to_computational(const Doublet& basis, const Op2& rho_pair) {
    return rho_pair(0, 0) * outer(basis.phi, basis.phi) +
           rho_pair(0, 1) * outer(basis.phi, basis.psi) +
           rho_pair(1, 0) * outer(basis.psi, basis.phi) +
           rho_pair(1, 1) * outer(basis.psi, basis.psi);
}

}  // namespace qugauge
