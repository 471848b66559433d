#pragma once

// Shared fixtures for the test suites: seeded randomness and generators for
// spectra, mixings, and unit kets with controlled parameter ranges.

#include <cmath>
#include <cstdint>
#include <random>

#include "qugauge/dynamics.hpp"
#include "qugauge/linalg.hpp"

namespace testsup {

inline std::mt19937 seeded_rng(std::uint32_t seed) { return std::mt19937{seed}; }

inline qugauge::Ket2 random_ket(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    qugauge::Ket2 v(qugauge::Complex(gauss(rng), gauss(rng)),
                    qugauge::Complex(gauss(rng), gauss(rng)));
    return qugauge::Ket2(v / v.norm());
}

// Non-degenerate spectrum: omega1 in [0.3, 2], |gap| in [0.3, 3], random sign.
inline qugauge::SpectrumConfig random_spectrum(std::mt19937& rng) {
    std::uniform_real_distribution<double> base(0.3, 2.0);
    std::uniform_real_distribution<double> gap_mag(0.3, 3.0);
    std::bernoulli_distribution flip(0.5);
    const double omega1 = base(rng);
    const double gap = gap_mag(rng) * (flip(rng) ? 1.0 : -1.0);
    return {omega1, omega1 + gap};
}

// Mixing angle in (0, pi/2) with an optional floor on |cos 2 theta| so the
// coupling tan(2 theta) stays representable when a test needs it.
inline qugauge::MixingConfig random_mixing(std::mt19937& rng, double min_cos2theta = 0.0) {
    std::uniform_real_distribution<double> theta(0.02, qugauge::pi / 2.0 - 0.02);
    for (;;) {
        const double th = theta(rng);
        if (std::abs(std::cos(2.0 * th)) >= min_cos2theta) return qugauge::make_mixing(th);
    }
}

}  // namespace testsup
