// config.hpp — JSON run configuration for the qugauge CLI
// One config file drives every subcommand: a spectrum (or a birefringent
// medium standing in for one), the mixing angle, a time grid, optional gauge
// function, optional sweep request, and tolerance overrides. Parsing is
// strict: unknown keys, missing sections, and out-of-range values are all
// rejected with a precise message.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qugauge/dynamics.hpp"
#include "qugauge/gauge.hpp"

namespace qugauge::cli {

// Anything wrong with the invocation or the config file; mapped to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeGrid {
    double t0{0.0};
    double t1{0.0};
    int samples{0};
};

struct OutputSpec {
    std::string format{"csv"};  // "csv" | "json"
    std::string path;           // empty = stdout
};

struct GaugeSpec {
    std::string family;  // constant | linear | quadratic | sinusoidal | sampled
    double value{0.0};
    double rate{0.0};
    double amplitude{0.0};
    double frequency{0.0};
    std::vector<double> times;
    std::vector<double> values;
    bool product{false};  // lambda already carries the coupling g

    GaugeFunction to_function() const;
    LambdaKind kind() const { return product ? LambdaKind::Product : LambdaKind::Bare; }
};

struct SweepSpec {
    std::string target;          // phases | entropy | gauge
    std::string axis;            // theta | omega1 | omega2 | n2 | t
    std::vector<double> values;  // ascending
};

// Documented pass/fail gates; every one can be overridden from the config.
struct Tolerances {
    double evolution_oracle{1e-8};   // closed-form state vs RK4, max entry
    double orthonormality{1e-10};    // norm defects and |<phi|psi>|
    double phase_quadrature{1e-8};   // closed beta vs quadrature route
    double phase_numeric{1e-6};      // closed beta vs fully numerical route
    double phase_sum{1e-10};         // beta_phi + beta_psi vs 2*pi
    double variance_identity{1e-12}; // moment variance vs w_ps^2
    double invariant_triple{1e-9};   // path length: closed vs quadrature routes
    double sphere_arc{1e-9};         // path length vs Bloch-sphere arc
    double gauge_residual{1e-7};     // evolution/covariant/transformed residuals
    double transformation_law{1e-8}; // operator transformation-law defect
    double entropy_oracle{1e-12};    // closed entropies vs purification tensor
};

struct RunConfig {
    std::optional<SpectrumConfig> spectrum;
    std::optional<MediumConfig> medium;
    MixingConfig mixing;
    TimeGrid grid;
    std::optional<GaugeSpec> gauge;
    std::optional<SweepSpec> sweep;
    Tolerances tol;
    OutputSpec output;

    bool from_medium() const { return medium.has_value(); }
    SpectrumConfig active_spectrum() const {
        return medium ? medium_to_spectrum(*medium) : *spectrum;
    }
};

// Parse and validate a config file; throws ConfigError with a precise message.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace qugauge::cli
