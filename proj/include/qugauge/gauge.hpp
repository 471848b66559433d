// gauge.hpp — covariant derivative, gauge transformations, and the flat gauge field
// The doublet evolution  i d/dt zeta = omega_d zeta + w_ps sigma1 zeta  rewrites as
//   i D_t zeta = omega_d zeta,      D_t = d/dt + i g A0 sigma1,
// with A0 = (w_ss - w_pp)/2 and coupling g = tan(2 theta), whose product
// g * A0 = w_ps is finite even where g itself is undefined. A time-dependent
// rotation U(t) = exp(-i g lambda(t) sigma1) shifts the field, A0 -> A0 + dlambda,
// and leaves the equation form-invariant with the diagonal term conjugated
// covariantly: i D'_t (U zeta) = U (omega_d zeta). The only field component is A0,
// constant in time, so the field strength vanishes identically.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qugauge/dynamics.hpp"
#include "qugauge/linalg.hpp"
#include "qugauge/oracle.hpp"

namespace qugauge {

// ----------------------------- gauge functions -------------------------------

// lambda(t) with its exact derivative supplied alongside; closed-form families
// plus a piecewise-linear sampled fallback (derivative = segment slope).
struct GaugeFunction {
    std::function<double(double)> lambda;
    std::function<double(double)> dlambda;

    static GaugeFunction constant(double c) {
        return {[c](double) { return c; }, [](double) { return 0.0; }};
    }
    static GaugeFunction linear(double rate) {
        return {[rate](double t) { return rate * t; }, [rate](double) { return rate; }};
    }
    static GaugeFunction quadratic(double rate) {
        return {[rate](double t) { return rate * t * t; },
                [rate](double t) { return 2.0 * rate * t; }};
    }
    static GaugeFunction sinusoidal(double amplitude, double frequency) {
        return {[amplitude, frequency](double t) { return amplitude * std::sin(frequency * t); },
                [amplitude, frequency](double t) {
                    return amplitude * frequency * std::cos(frequency * t);
                }};
    }
    static GaugeFunction sampled(std::vector<double> times, std::vector<double> values);
};

inline void validate(const GaugeFunction& gf) {
    if (!gf.lambda || !gf.dlambda) {
        throw std::invalid_argument("GaugeFunction: lambda and dlambda must both be set");
    }
}

inline GaugeFunction GaugeFunction::sampled(std::vector<double> times,
                                            std::vector<double> values) {
    if (times.size() < 2 || times.size() != values.size()) {
        throw std::invalid_argument("GaugeFunction::sampled: need >= 2 matching knots");
    }
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] < times[i + 1])) {
            throw std::invalid_argument("GaugeFunction::sampled: times must be increasing");
        }
    }
    // Segment index for t; edge segments extend linearly beyond the grid.
    auto segment = [times](double t) -> std::size_t {
        std::size_t lo = 0;
        std::size_t hi = times.size() - 2;
        if (t <= times.front()) return 0;
        if (t >= times[hi]) return hi;
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            if (times[mid] <= t) lo = mid; else hi = mid - 1;
        }
        return lo;
    };
    auto lam = [times, values, segment](double t) {
        const std::size_t k = segment(t);
        const double slope = (values[k + 1] - values[k]) / (times[k + 1] - times[k]);
        return values[k] + slope * (t - times[k]);
    };
    auto dlam = [times, values, segment](double t) {
        const std::size_t k = segment(t);
        return (values[k + 1] - values[k]) / (times[k + 1] - times[k]);
    };
    return {lam, dlam};
}

// Max deviation of dlambda from a central difference of lambda over a grid;
// diagnostic used to validate closed-form families.
inline double derivative_defect(const GaugeFunction& gf, double t0, double t1,
                                std::size_t samples, double h = 1e-6) {
    validate(gf);
    if (samples < 2) throw std::invalid_argument("derivative_defect: need >= 2 samples");
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);
        worst = std::max(worst, std::abs(gf.dlambda(t) - central_diff(gf.lambda, t, h)));
    }
    return worst;
}

// ------------------------------- gauge field ---------------------------------

// Time component A0 with its coupling; the coupling is absent (never NaN) when
// cos(2 theta) = 0, where only the product g * A0 = w_ps remains meaningful.
struct GaugeField {
    double a0{0.0};
    std::optional<double> coupling{};
};

inline GaugeField gauge_field(const SpectrumConfig& s, const MixingConfig& m) {
    const OmegaElements w = omega_elements(s, m);
    return {w.a0, w.g};
}

// Whether the lambda handed to a transform is the bare lambda (to be multiplied
// by g) or already the product g * lambda — the only usable form when g is
// undefined.
enum class LambdaKind { Bare, Product };

struct GaugeTransformResult {
    Doublet doublet;   // zeta' = U(t) zeta
    GaugeField field;  // A0' = A0 + dlambda(t), coupling unchanged
};

// Apply U(t) = exp(-i g lambda(t) sigma1) on the doublet index and shift the
// field component accordingly. With LambdaKind::Product, lambda already carries
// the coupling, so at cos(2 theta) = 0 (g undefined, A0 = 0) the bare shift
// dlambda = d(g lambda)/dt / g degenerates to 0 and A0 is left unchanged.
inline GaugeTransformResult gauge_transform(const Doublet& z, const GaugeFunction& gf,
                                            const SpectrumConfig& s, const MixingConfig& m,
                                            double t, LambdaKind kind = LambdaKind::Bare) {
    validate(gf);
    if (!is_finite(t)) throw std::invalid_argument("gauge_transform: non-finite time");
    const OmegaElements w = omega_elements(s, m);
    double mu = 0.0;       // g * lambda(t), the rotation angle
    double a0_shift = 0.0; // dlambda(t)
    if (kind == LambdaKind::Bare) {
        if (!w.g) {
            throw std::invalid_argument(
                "gauge_transform: coupling undefined at cos(2 theta) = 0; "
                "supply the product g*lambda via LambdaKind::Product");
        }
        mu = *w.g * gf.lambda(t);
        a0_shift = gf.dlambda(t);
    } else {
        mu = gf.lambda(t);
        a0_shift = w.g ? gf.dlambda(t) / *w.g : 0.0;
    }
    const Op2 u = exp_sigma1(mu);
    return {apply_on_doublet(u, z), GaugeField{w.a0 + a0_shift, w.g}};
}

// ------------------------------- residuals -----------------------------------

// Max-entry residual of  i D_t zeta - omega_d zeta  on the closed-form doublet,
// the derivative taken by central difference. The sigma1 term always enters
// through the finite product w_ps = g * A0.
inline double covariant_derivative_residual(const SpectrumConfig& s, const MixingConfig& m,
                                            double t, double h = 1e-5) {
    if (!(h > 0.0) || !is_finite(h)) {
        throw std::domain_error("covariant_derivative_residual: step must be positive");
    }
    if (is_degenerate(s)) {
        throw std::domain_error("covariant_derivative_residual: degenerate spectrum");
    }
    const OmegaElements w = omega_elements(s, m);
    const Doublet zp = doublet_at(s, m, t + h);
    const Doublet zm = doublet_at(s, m, t - h);
    const Doublet z = doublet_at(s, m, t);
    const Complex iu(0, 1);
    // i D_t zeta = i d/dt zeta - w_ps sigma1 zeta
    const Ket2 r_phi = iu * Ket2((zp.phi - zm.phi) / (2.0 * h)) - w.w_ps * z.psi - w.w_pp * z.phi;
    const Ket2 r_psi = iu * Ket2((zp.psi - zm.psi) / (2.0 * h)) - w.w_ps * z.phi - w.w_ss * z.psi;
    return std::max(max_abs(r_phi), max_abs(r_psi));
}

namespace detail {

// Rotation angle mu(tau) = g * lambda(tau) for either lambda kind.
inline std::function<double(double)> rotation_angle(const GaugeFunction& gf,
                                                    const OmegaElements& w, LambdaKind kind) {
    if (kind == LambdaKind::Bare) {
        if (!w.g) {
            throw std::invalid_argument(
                "gauge residual: coupling undefined; use LambdaKind::Product");
        }
        const double g = *w.g;
        auto lam = gf.lambda;
        return [g, lam](double tau) { return g * lam(tau); };
    }
    return gf.lambda;
}

// d(g lambda)/dt at t for either kind — always finite.
inline double rotation_rate(const GaugeFunction& gf, const OmegaElements& w, LambdaKind kind,
                            double t) {
    return kind == LambdaKind::Bare ? *w.g * gf.dlambda(t) : gf.dlambda(t);
}

}  // namespace detail

// Max-entry residual of the transformed evolution equation
//   i D'_t zeta' = U (omega_d zeta),   zeta' = U(t) zeta,   D'_t = d/dt + i g (A0 + dlambda) sigma1.
// The diagonal term rides along covariantly (conjugated by U); with lambda = 0
// this reduces entry for entry to covariant_derivative_residual. The time
// derivative of zeta' is taken fully numerically, U(t) included.
inline double gauge_invariance_residual(const GaugeFunction& gf, const SpectrumConfig& s,
                                        const MixingConfig& m, double t, double h = 1e-5,
                                        LambdaKind kind = LambdaKind::Bare) {
    validate(gf);
    if (!(h > 0.0) || !is_finite(h)) {
        throw std::domain_error("gauge_invariance_residual: step must be positive");
    }
    if (is_degenerate(s)) {
        throw std::domain_error("gauge_invariance_residual: degenerate spectrum");
    }
    const OmegaElements w = omega_elements(s, m);
    const auto mu = detail::rotation_angle(gf, w, kind);
    const double dmu = detail::rotation_rate(gf, w, kind, t);

    const auto primed = [&](double tau) -> Doublet {
        return apply_on_doublet(exp_sigma1(mu(tau)), doublet_at(s, m, tau));
    };
    const Doublet zp = primed(t + h);
    const Doublet zm = primed(t - h);
    const Doublet zt = primed(t);
    const Doublet z = doublet_at(s, m, t);

    const Complex iu(0, 1);
    const Ket2 dphi = (zp.phi - zm.phi) / (2.0 * h);
    const Ket2 dpsi = (zp.psi - zm.psi) / (2.0 * h);
    // i D'_t zeta' with g (A0 + dlambda) = w_ps + d(g lambda)/dt
    const Ket2 lhs_phi = iu * dphi - (w.w_ps + dmu) * zt.psi;
    const Ket2 lhs_psi = iu * dpsi - (w.w_ps + dmu) * zt.phi;
    // U (omega_d zeta)
    const Doublet rhs = apply_on_doublet(exp_sigma1(mu(t)),
                                         Doublet{Ket2(w.w_pp * z.phi), Ket2(w.w_ss * z.psi)});
    return std::max(max_abs(Ket2(lhs_phi - rhs.phi)), max_abs(Ket2(lhs_psi - rhs.psi)));
}

// Max-entry defect of the operator transformation law
//   g A0' sigma1 = U (g A0 sigma1) U^{-1} + i (dU/dt) U^{-1},
// with dU/dt by central difference. Zero up to truncation for every lambda.
inline double transformation_law_defect(const GaugeFunction& gf, const SpectrumConfig& s,
                                        const MixingConfig& m, double t, double h = 1e-5,
                                        LambdaKind kind = LambdaKind::Bare) {
    validate(gf);
    if (!(h > 0.0) || !is_finite(h)) {
        throw std::domain_error("transformation_law_defect: step must be positive");
    }
    const OmegaElements w = omega_elements(s, m);
    const auto mu = detail::rotation_angle(gf, w, kind);
    const double dmu = detail::rotation_rate(gf, w, kind, t);

    const Op2 ut = exp_sigma1(mu(t));
    const Op2 ut_inv = exp_sigma1(-mu(t));
    const Op2 du = central_diff([&](double tau) { return exp_sigma1(mu(tau)); }, t, h);
    const Op2 lhs = (w.w_ps + dmu) * pauli1();
    const Op2 rhs = ut * (w.w_ps * pauli1()) * ut_inv + Complex(0, 1) * du * ut_inv;
    return max_abs(Op2(lhs - rhs));
}

// ----------------------------- field strength --------------------------------

struct FieldStrengthReport {
    double a0{0.0};                // the single field component
    double constancy_witness{0.0}; // max |A0(t_i) - A0(t_0)| over the grid
    double commutator_witness{0.0};// max-entry of [A0 sigma1, A0 sigma1]
    bool zero{false};
};

// The only component is the constant A0, so every piece of
// F = dA - dA + i g [A, A] vanishes; the witnesses document this numerically.
inline FieldStrengthReport field_strength_is_zero(const SpectrumConfig& s,
                                                  const MixingConfig& m, double t0 = 0.0,
                                                  double t1 = 1.0, std::size_t samples = 11) {
    if (samples < 2) throw std::invalid_argument("field_strength_is_zero: need >= 2 samples");
    FieldStrengthReport rep;
    rep.a0 = omega_elements(s, m).a0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);
        (void)t;  // A0 carries no time dependence; re-evaluate and compare anyway
        const double a0_t = omega_elements(s, m).a0;
        rep.constancy_witness = std::max(rep.constancy_witness, std::abs(a0_t - rep.a0));
    }
    const Op2 a = rep.a0 * pauli1();
    rep.commutator_witness = max_abs(Op2(a * a - a * a));
    rep.zero = rep.constancy_witness == 0.0 && rep.commutator_witness == 0.0;
    return rep;
}

// ------------------------------- free energy ---------------------------------

// H = F + TS with F = diag(w_pp, w_ss) in the doublet representation and
// TS = w_ps sigma1; the factorization reads T = g, S = A0 (product w_ps).
struct FreeEnergy {
    Op2 doublet_rep;                      // F: diagonal part
    Op2 ts_term;                          // w_ps sigma1
    double entropy_factor{0.0};           // S = A0
    std::optional<double> temperature{};  // T = g, absent with the coupling
};

inline FreeEnergy free_energy_operator(const SpectrumConfig& s, const MixingConfig& m) {
    const OmegaElements w = omega_elements(s, m);
    FreeEnergy f;
    f.doublet_rep = omega_diag(w);
    f.ts_term = w.w_ps * pauli1();
    f.entropy_factor = w.a0;
    f.temperature = w.g;
    return f;
}

// TS in the computational basis, w_ps (|phi(t)><psi(t)| + |psi(t)><phi(t)|).
inline Op2 ts_in_computational(const SpectrumConfig& s, const MixingConfig& m, double t) {
    const OmegaElements w = omega_elements(s, m);
    const Doublet d = doublet_at(s, m, t);
    return w.w_ps * (outer(d.phi, d.psi) + outer(d.psi, d.phi));
}

// F(t) = H - TS(t) in the computational basis; phi(t) and psi(t) are its
// eigenvectors with eigenvalues w_pp and w_ss at every t.
inline Op2 free_energy_in_computational(const SpectrumConfig& s, const MixingConfig& m,
                                        double t) {
    return Op2(build_hamiltonian(s) - ts_in_computational(s, m, t));
}

// Doublet expectation integral of the TS term,
//   integral of <zeta|TS sigma1|zeta> dt = 2 w_ps (t1 - t0),
// in closed form and by Simpson quadrature over the live states.
struct TsIntegral {
    double closed{0.0};
    double quadrature{0.0};
};

inline TsIntegral ts_integral(const SpectrumConfig& s, const MixingConfig& m, double t0,
                              double t1, std::size_t panels = 0) {
    validate(s);
    validate(m);
    if (!is_finite(t0) || !is_finite(t1)) {
        throw std::invalid_argument("ts_integral: non-finite bounds");
    }
    const OmegaElements w = omega_elements(s, m);
    if (panels == 0) panels = default_panels(s, t0, t1);
    const auto integrand = [&](double tau) {
        const Doublet d = doublet_at(s, m, tau);
        const Op2 ts = ts_in_computational(s, m, tau);
        // <zeta|TS sigma1|zeta> = <phi|TS|psi> + <psi|TS|phi>
        return (inner(d.phi, Ket2(ts * d.psi)) + inner(d.psi, Ket2(ts * d.phi))).real();
    };
    return {2.0 * w.w_ps * (t1 - t0), simpson(integrand, t0, t1, panels)};
}

// ------------------------------ birefringence --------------------------------

// Medium with two refractive indices: each component of the doublet crosses a
// slab of length ell at speed v0/n_i, i.e. accumulates phase omega * t_i with
// transit time t_i = ell * n_i / v0. Equivalent to the spectrum (n1 w, n2 w)
// watched for the vacuum transit time ell / v0.
struct MediumConfig {
    double omega{0.0};
    double n1{1.0};
    double n2{1.0};
    double ell{1.0};
    double v0{1.0};
};

inline void validate(const MediumConfig& mc) {
    if (!is_finite(mc.omega) || !is_finite(mc.n1) || !is_finite(mc.n2) ||
        !is_finite(mc.ell) || !is_finite(mc.v0)) {
        throw std::invalid_argument("MediumConfig: non-finite parameter");
    }
    if (mc.n1 < 1.0 || mc.n2 < 1.0) {
        throw std::invalid_argument("MediumConfig: refractive indices must be >= 1");
    }
    if (!(mc.ell > 0.0) || !(mc.v0 > 0.0)) {
        throw std::invalid_argument("MediumConfig: ell and v0 must be positive");
    }
}

inline SpectrumConfig medium_to_spectrum(const MediumConfig& mc) {
    validate(mc);
    return {mc.n1 * mc.omega, mc.n2 * mc.omega};  // may be degenerate when n1 = n2
}

// (t1, t2) = (ell n1 / v0, ell n2 / v0)
inline std::pair<double, double> transit_times(const MediumConfig& mc) {
    validate(mc);
    return {mc.ell * mc.n1 / mc.v0, mc.ell * mc.n2 / mc.v0};
}

// Doublet after the slab, phases accumulated per component as omega * t_i —
// no reference to the equivalent spectrum.
inline Doublet medium_doublet(const MediumConfig& mc, const MixingConfig& m) {
    const auto [tt1, tt2] = transit_times(mc);
    Op2 p;
    p << std::exp(Complex(0, -mc.omega * tt1)), Complex(0, 0),
         Complex(0, 0), std::exp(Complex(0, -mc.omega * tt2));
    const Doublet z0 = build_mixed_basis(m);
    return {Ket2(p * z0.phi), Ket2(p * z0.psi)};
}

// A0 of the medium, (1/2) omega (n2 - n1) cos(2 theta), written from the
// medium parameters directly; equals gauge_field(medium_to_spectrum(mc), m).
inline GaugeField birefringent_gauge_field(const MediumConfig& mc, const MixingConfig& m) {
    validate(mc);
    validate(m);
    const double a0 = 0.5 * mc.omega * (mc.n2 - mc.n1) * std::cos(2.0 * m.theta);
    return {a0, omega_elements(medium_to_spectrum(mc), m).g};
}

}  // namespace qugauge
