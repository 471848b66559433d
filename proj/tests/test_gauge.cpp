// Gauge functions, the flat field and its transforms, free-energy splitting,
// and the birefringent-medium equivalence.

#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "qugauge/gauge.hpp"
#include "test_support.hpp"

using namespace qugauge;

namespace {

// Smooth families drawn with random parameters; sampled kinks are exercised
// separately because their derivative is only piecewise defined.
GaugeFunction random_smooth_gauge(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> par(-1.0, 1.0);
    switch (pick(rng)) {
        case 0: return GaugeFunction::constant(par(rng));
        case 1: return GaugeFunction::linear(0.5 * par(rng));
        case 2: return GaugeFunction::quadratic(0.15 * par(rng));
        default:
            return GaugeFunction::sinusoidal(0.5 * par(rng), 1.0 + 0.5 * std::abs(par(rng)));
    }
}

}  // namespace

TEST_SUITE("gauge") {

// ------------------------------ gauge functions --------------------------------

TEST_CASE("factory families evaluate value and rate consistently") {
    const GaugeFunction c = GaugeFunction::constant(0.7);
    CHECK(c.lambda(3.0) == 0.7);
    CHECK(c.dlambda(3.0) == 0.0);

    const GaugeFunction l = GaugeFunction::linear(0.4);
    CHECK(l.lambda(2.0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(l.dlambda(9.0) == 0.4);

    const GaugeFunction q = GaugeFunction::quadratic(0.3);
    CHECK(q.lambda(2.0) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(q.dlambda(2.0) == doctest::Approx(1.2).epsilon(1e-15));

    const GaugeFunction s = GaugeFunction::sinusoidal(0.5, 2.0);
    CHECK(s.lambda(1.0) == doctest::Approx(0.5 * std::sin(2.0)).epsilon(1e-15));
    CHECK(s.dlambda(1.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-15));
}

TEST_CASE("sampled gauge functions interpolate and validate their knots") {
    const GaugeFunction g = GaugeFunction::sampled({0.0, 1.0, 2.0}, {0.0, 2.0, 2.0});
    CHECK(g.lambda(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.lambda(1.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.dlambda(0.5) == doctest::Approx(2.0).epsilon(1e-15));
    // Edge segments extend linearly beyond the grid.
    CHECK(g.lambda(-1.0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(g.lambda(3.0) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(GaugeFunction::sampled({0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GaugeFunction::sampled({0.0, 1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GaugeFunction::sampled({1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("stated rates agree with central differences for smooth families") {
    auto rng = testsup::seeded_rng(401);
    for (int i = 0; i < 20; ++i) {
        const GaugeFunction gf = random_smooth_gauge(rng);
        CHECK(derivative_defect(gf, 0.0, 3.0, 31) <= 1e-6);
    }
}

TEST_CASE("gauge function validation requires both callables") {
    CHECK_THROWS_AS(validate(GaugeFunction{}), std::invalid_argument);
    CHECK_NOTHROW(validate(GaugeFunction::constant(1.0)));
}

// ------------------------------- flat field -----------------------------------

TEST_CASE("field component is half the dressed splitting with optional coupling") {
    auto rng = testsup::seeded_rng(402);
    for (int i = 0; i < 30; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng, 0.05);
        const OmegaElements w = omega_elements(s, m);
        const GaugeField f = gauge_field(s, m);
        CHECK(f.a0 == w.a0);
        REQUIRE(f.coupling.has_value());
        CHECK(std::abs(*f.coupling * f.a0 - w.w_ps) <= 1e-12);
    }
    CHECK_FALSE(gauge_field({1.0, 2.0}, make_mixing(pi / 4.0)).coupling.has_value());
}

TEST_CASE("field strength witnesses vanish identically") {
    auto rng = testsup::seeded_rng(403);
    for (int i = 0; i < 20; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        const FieldStrengthReport rep = field_strength_is_zero(s, m, 0.0, 5.0, 11);
        CHECK(rep.constancy_witness == 0.0);
        CHECK(rep.commutator_witness == 0.0);
        CHECK(rep.zero);
    }
    CHECK_THROWS_AS(field_strength_is_zero({1.0, 2.0}, make_mixing(0.4), 0.0, 1.0, 1),
                    std::invalid_argument);
}

// ----------------------------- gauge transforms --------------------------------

TEST_CASE("transform keeps the doublet orthonormal and shifts the field by the rate") {
    auto rng = testsup::seeded_rng(404);
    std::uniform_real_distribution<double> times(0.0, 8.0);
    for (int i = 0; i < 30; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng, 0.2);
        const double t = times(rng);
        const GaugeFunction gf = GaugeFunction::linear(0.37);
        const Doublet z = doublet_at(s, m, t);
        const GaugeTransformResult r = gauge_transform(z, gf, s, m, t);
        CHECK(norm_defect(r.doublet.phi) <= 1e-13);
        CHECK(norm_defect(r.doublet.psi) <= 1e-13);
        CHECK(std::abs(inner(r.doublet.phi, r.doublet.psi)) <= 1e-13);
        const double a0 = omega_elements(s, m).a0;
        CHECK(std::abs(r.field.a0 - (a0 + 0.37)) <= 1e-12);
        REQUIRE(r.field.coupling.has_value());
        CHECK(*r.field.coupling == *gauge_field(s, m).coupling);
    }
}

TEST_CASE("product-form lambda leaves the field untouched at maximal mixing") {
    const SpectrumConfig s{1.0, 2.0};
    const MixingConfig m = make_mixing(pi / 4.0);
    const Doublet z = doublet_at(s, m, 0.8);
    const GaugeFunction gf = GaugeFunction::sinusoidal(0.4, 1.3);
    const GaugeTransformResult r =
        gauge_transform(z, gf, s, m, 0.8, LambdaKind::Product);
    CHECK(r.field.a0 == omega_elements(s, m).a0);
    CHECK_FALSE(r.field.coupling.has_value());
    CHECK(norm_defect(r.doublet.phi) <= 1e-13);
    // The bare form needs the coupling and must refuse to guess it.
    CHECK_THROWS_AS(gauge_transform(z, gf, s, m, 0.8, LambdaKind::Bare),
                    std::invalid_argument);
}

TEST_CASE("covariant derivative annihilates the evolving doublet") {
    auto rng = testsup::seeded_rng(405);
    std::uniform_real_distribution<double> times(0.1, 8.0);
    for (int i = 0; i < 20; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        CHECK(covariant_derivative_residual(s, m, times(rng)) <= 1e-8);
    }
}

TEST_CASE("equation of motion is reproduced in every transformed frame") {
    auto rng = testsup::seeded_rng(406);
    std::uniform_real_distribution<double> times(0.1, 3.0);
    for (int i = 0; i < 30; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng, 0.2);
        const GaugeFunction gf = random_smooth_gauge(rng);
        const double t = times(rng);
        for (const LambdaKind kind : {LambdaKind::Bare, LambdaKind::Product}) {
            CHECK(gauge_invariance_residual(gf, s, m, t, 1e-5, kind) <= 1e-7);
        }
    }
}

TEST_CASE("rotation operator satisfies the differential transformation law") {
    auto rng = testsup::seeded_rng(407);
    std::uniform_real_distribution<double> times(0.1, 3.0);
    for (int i = 0; i < 30; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng, 0.2);
        const GaugeFunction gf = random_smooth_gauge(rng);
        const double t = times(rng);
        for (const LambdaKind kind : {LambdaKind::Bare, LambdaKind::Product}) {
            CHECK(transformation_law_defect(gf, s, m, t, 1e-5, kind) <= 1e-8);
        }
    }
}

// ----------------------------- free-energy split -------------------------------

TEST_CASE("hamiltonian splits into diagonal free energy plus the swap term") {
    auto rng = testsup::seeded_rng(408);
    for (int i = 0; i < 20; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng, 0.05);
        const OmegaElements w = omega_elements(s, m);
        const FreeEnergy f = free_energy_operator(s, m);
        CHECK(max_abs(Op2(f.doublet_rep + f.ts_term - hamiltonian_in_mixed_basis(s, m, 0.0))) <=
              1e-13);
        CHECK(f.entropy_factor == w.a0);
        REQUIRE(f.temperature.has_value());
        CHECK(std::abs(*f.temperature * f.entropy_factor - w.w_ps) <= 1e-12);
    }
}

TEST_CASE("evolving doublet states are eigenvectors of the computational free energy") {
    auto rng = testsup::seeded_rng(409);
    std::uniform_real_distribution<double> times(0.0, 9.0);
    for (int i = 0; i < 15; ++i) {
        const SpectrumConfig s = testsup::random_spectrum(rng);
        const MixingConfig m = testsup::random_mixing(rng);
        const OmegaElements w = omega_elements(s, m);
        const double t = times(rng);
        const Doublet z = doublet_at(s, m, t);
        const Op2 f = free_energy_in_computational(s, m, t);
        CHECK(max_abs(Ket2(f * z.phi - w.w_pp * z.phi)) <= 1e-12);
        CHECK(max_abs(Ket2(f * z.psi - w.w_ss * z.psi)) <= 1e-12);
        // H = F + TS reassembles in the computational frame.
        CHECK(max_abs(Op2(f + ts_in_computational(s, m, t) - build_hamiltonian(s))) <=
              1e-13);
    }
}

TEST_CASE("swap-term expectation integral matches its closed form") {
    const SpectrumConfig s{1.0, 2.0};
    const MixingConfig m = make_mixing(pi / 6.0);
    const TsIntegral r = ts_integral(s, m, 0.0, period(s));
    CHECK(std::abs(r.closed - 2.0 * 0.4330127018922193 * period(s)) <= 1e-12);
    CHECK(std::abs(r.quadrature - r.closed) <= 1e-9);
}

// ------------------------------ birefringence ----------------------------------

TEST_CASE("medium validation rejects unphysical parameters") {
    CHECK_NOTHROW(validate(MediumConfig{1.0, 1.0, 1.5, 2.0, 1.0}));
    CHECK_THROWS_AS(validate(MediumConfig{1.0, 0.9, 1.5, 2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(MediumConfig{1.0, 1.0, 1.5, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(MediumConfig{1.0, 1.0, 1.5, 2.0, -1.0}), std::invalid_argument);
}

TEST_CASE("medium maps to the scaled spectrum with per-component transit times") {
    const MediumConfig mc{1.2, 1.1, 1.7, 2.0, 0.8};
    const SpectrumConfig s = medium_to_spectrum(mc);
    CHECK(s.omega1 == doctest::Approx(1.32).epsilon(1e-15));
    CHECK(s.omega2 == doctest::Approx(2.04).epsilon(1e-15));
    const auto [t1, t2] = transit_times(mc);
    CHECK(t1 == doctest::Approx(2.75).epsilon(1e-15));
    CHECK(t2 == doctest::Approx(4.25).epsilon(1e-15));
}

TEST_CASE("slab crossing equals spectrum evolution for the vacuum transit time") {
    auto rng = testsup::seeded_rng(410);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    std::uniform_real_distribution<double> idx(1.0, 2.5);
    std::uniform_real_distribution<double> len(0.5, 3.0);
    for (int i = 0; i < 20; ++i) {
        const MediumConfig mc{w(rng), idx(rng), idx(rng), len(rng), w(rng)};
        const MixingConfig m = testsup::random_mixing(rng);
        const Doublet slab = medium_doublet(mc, m);
        const Doublet spec = doublet_at(medium_to_spectrum(mc), m, mc.ell / mc.v0);
        CHECK(max_abs(doublet_difference(slab, spec)) <= 1e-12);
    }
}

TEST_CASE("birefringent field matches the equivalent-spectrum field") {
    auto rng = testsup::seeded_rng(411);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    std::uniform_real_distribution<double> idx(1.0, 2.5);
    for (int i = 0; i < 20; ++i) {
        const MediumConfig mc{w(rng), idx(rng), idx(rng), 1.0, 1.0};
        const MixingConfig m = testsup::random_mixing(rng, 0.05);
        const GaugeField direct = birefringent_gauge_field(mc, m);
        const GaugeField via_spectrum = gauge_field(medium_to_spectrum(mc), m);
        CHECK(std::abs(direct.a0 - via_spectrum.a0) <= 1e-14);
        REQUIRE(direct.coupling.has_value() == via_spectrum.coupling.has_value());
        if (direct.coupling.has_value()) {
            CHECK(*direct.coupling == *via_spectrum.coupling);
        }
    }
}

}  // TEST_SUITE("gauge")
