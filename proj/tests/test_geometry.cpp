// Geometric phases, energy variance, the adiabatic-anholonomy invariant,
// short-time overlap expansion, and ray-space distances.

#include "doctest.h"

#include <cmath>
#include <random>

#include "qugauge/geometry.hpp"
#include "test_support.hpp"

using namespace qugauge;

namespace {

constexpr double two_pi = 2.0 * pi;

}  // namespace

TEST_SUITE("geometry") {

// ------------------------------ phase report -----------------------------------

TEST_CASE("cyclic phases follow the sine and cosine squares of the mixing angle") {
    auto rng = testsup::seeded_rng(501);
    for (int i = 0; i < 30; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        const PhaseReport rep = phase_report(s, m);
        const double sin2 = std::sin(m.theta) * std::sin(m.theta);
        CHECK(std::abs(rep.beta_phi - two_pi * sin2) <= 1e-12);
        CHECK(std::abs(rep.beta_psi - two_pi * (1.0 - sin2)) <= 1e-12);
        CHECK(std::abs(rep.beta_phi + rep.beta_psi - two_pi) <= 1e-12);
        CHECK(rep.varphi == -s.omega1 * rep.period);
        CHECK(rep.period == period(s));
    }
    CHECK_THROWS_AS(phase_report({1.0, 1.0}, make_mixing(0.4)), std::domain_error);
}

TEST_CASE("quadrature route reproduces the closed-form phases tightly") {
    auto rng = testsup::seeded_rng(502);
    for (int i = 0; i < 10; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        for (const StateSelect which : {StateSelect::Phi, StateSelect::Psi}) {
            const double closed = berry_phase_closed(s, m, which);
            CHECK(std::abs(berry_phase_quadrature(s, m, which) - closed) <= 1e-8);
        }
    }
}

TEST_CASE("numeric route through live differentiated states stays within a micro") {
    const SpectrumConfig s{1.0, 2.0};
    const MixingConfig m = make_mixing(pi / 6.0);
    CHECK(std::abs(berry_phase_numeric(s, m, StateSelect::Phi) -
                   berry_phase_closed(s, m, StateSelect::Phi)) <= 1e-6);
    CHECK(std::abs(berry_phase_numeric(s, m, StateSelect::Psi) -
                   berry_phase_closed(s, m, StateSelect::Psi)) <= 1e-6);
}

TEST_CASE("frozen reference point: phases at a sixth of pi") {
    const PhaseReport rep = phase_report({1.0, 2.0}, make_mixing(pi / 6.0));
    CHECK(std::abs(rep.beta_phi - 1.5707963267948966) <= 1e-14);
    CHECK(std::abs(rep.beta_psi - 4.7123889803846899) <= 1e-14);
    CHECK(std::abs(rep.varphi + 6.2831853071795862) <= 1e-14);
}

// ----------------------------- energy variance ----------------------------------

TEST_CASE("energy variance equals the squared off-diagonal element in both states") {
    auto rng = testsup::seeded_rng(503);
    for (int i = 0; i < 30; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        const OmegaElements w = omega_elements(s, m);
        const VarianceReport var = energy_variance(s, m);
        CHECK(std::abs(var.dw2 - w.w_ps * w.w_ps) <= 1e-13);
        CHECK(std::abs(var.dw2_phi - var.dw2_psi) <= 1e-12);
        CHECK(std::abs(var.dw2_phi - var.dw2) <= 1e-12);
    }
}

// --------------------------- anholonomy invariant -------------------------------

TEST_CASE("invariant closed form is twice the energy spread times the duration") {
    auto rng = testsup::seeded_rng(504);
    std::uniform_real_distribution<double> bounds(0.2, 2.0);
    for (int i = 0; i < 10; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        const double t0 = bounds(rng);
        const double t1 = t0 + bounds(rng);
        const AaInvariant aa = aa_invariant(s, m, t0, t1);
        const double w_ps = omega_elements(s, m).w_ps;
        CHECK(std::abs(aa.closed - 2.0 * std::abs(w_ps) * (t1 - t0)) <= 1e-12);
        CHECK(std::abs(aa.quadrature - aa.closed) <= 1e-9);
    }
}

// ----------------------------- overlap expansion --------------------------------

TEST_CASE("short-time overlap defect approaches its quadratic prediction") {
    const SpectrumConfig s{1.0, 2.3};
    const MixingConfig m = make_mixing(pi / 5.0);
    for (const double dt : {1e-2, 1e-3, 1e-4}) {
        const OverlapExpansion oe = overlap_expansion_check(s, m, 0.37, dt);
        REQUIRE(oe.predicted > 0.0);
        const double ratio_same = oe.same_state_defect / oe.predicted;
        const double ratio_cross = oe.cross_term / oe.predicted;
        CHECK(ratio_same >= 1.0 - 10.0 * dt);
        CHECK(ratio_same <= 1.0 + 10.0 * dt);
        CHECK(ratio_cross >= 1.0 - 10.0 * dt);
        CHECK(ratio_cross <= 1.0 + 10.0 * dt);
    }
    CHECK_THROWS_AS(overlap_expansion_check(s, m, 0.0, 0.0), std::domain_error);
}

TEST_CASE("overlap defect decays at second order in the step") {
    const SpectrumConfig s{1.0, 2.3};
    const MixingConfig m = make_mixing(pi / 5.0);
    const double d1 = overlap_expansion_check(s, m, 0.37, 1e-2).same_state_defect;
    const double d2 = overlap_expansion_check(s, m, 0.37, 1e-3).same_state_defect;
    const double order = std::log10(d1 / d2);  // one decade in dt
    CHECK(order >= 2.0 - 1e-3);
    CHECK(order <= 2.0 + 1e-2);
}

// ------------------------------ ray-space speed ---------------------------------

TEST_CASE("ray speed is constant and the arc equals the invariant") {
    auto rng = testsup::seeded_rng(505);
    std::uniform_real_distribution<double> bounds(0.2, 2.0);
    for (int i = 0; i < 10; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        const double t0 = bounds(rng);
        const double t1 = t0 + bounds(rng);
        const FsPoint fs = fs_distance(s, m, t0, t1);
        const double w_ps = omega_elements(s, m).w_ps;
        CHECK(std::abs(fs.ds_dt - 2.0 * w_ps) <= 1e-13);
        CHECK(std::abs(fs.s_accum - fs.ds_dt * (t1 - t0)) <= 1e-12);
        CHECK(std::abs(std::abs(fs.s_accum) - aa_invariant(s, m, t0, t1, 2).closed) <=
              1e-12);
    }
}

TEST_CASE("great-circle arc on the sphere matches the ray-space arc") {
    auto rng = testsup::seeded_rng(506);
    for (int i = 0; i < 8; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        const double t1 = std::abs(period(s));
        const double arc = sphere_correspondence(s, m, 0.0, t1);
        const double w_ps = omega_elements(s, m).w_ps;
        CHECK(std::abs(arc - 2.0 * std::abs(w_ps) * t1) <= 1e-9);
    }
}

TEST_CASE("frozen reference point: speed and per-period arc at a sixth of pi") {
    const SpectrumConfig s{1.0, 2.0};
    const MixingConfig m = make_mixing(pi / 6.0);
    const double t_period = period(s);
    const FsPoint fs = fs_distance(s, m, 0.0, t_period);
    CHECK(std::abs(fs.ds_dt - 0.8660254037844386) <= 1e-15);
    CHECK(std::abs(fs.s_accum - 5.4413980927026531) <= 1e-12);
    // Triple agreement: closed arc, state quadrature, sphere arc.
    const AaInvariant aa = aa_invariant(s, m, 0.0, t_period);
    CHECK(std::abs(aa.quadrature - 5.4413980927026531) <= 1e-9);
    CHECK(std::abs(sphere_correspondence(s, m, 0.0, t_period) - 5.4413980927026531) <=
          1e-9);
}

}  // TEST_SUITE("geometry")
