// oracle.hpp — independent brute-force checks for the closed-form results
// Deliberately pedestrian numerics: a fixed-step RK4 integrator for the
// Schrodinger equation, composite Simpson quadrature, central finite
// differences, and an explicit 4-dimensional purification tensor with
// partial traces written out index by index. Nothing here reuses the
// closed-form shortcuts it is meant to cross-examine.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "qugauge/dynamics.hpp"
#include "qugauge/linalg.hpp"

namespace qugauge {

// ------------------------------ RK4 integrator -------------------------------

struct IntegratorConfig {
    double step{1e-3};
    double t_end{0.0};
    int renormalize_every{0};  // renormalize the state every k steps; 0 = never
};

// The step must resolve the fastest phase: step <= 0.01 * (2*pi / max |omega|).
inline void validate(const IntegratorConfig& cfg, const SpectrumConfig& s) {
    validate(s);
    if (!(cfg.step > 0.0) || !is_finite(cfg.step)) {
        throw std::invalid_argument("IntegratorConfig: step must be positive and finite");
    }
    if (!is_finite(cfg.t_end) || cfg.t_end < 0.0) {
        throw std::invalid_argument("IntegratorConfig: t_end must be finite and >= 0");
    }
    if (cfg.renormalize_every < 0) {
        throw std::invalid_argument("IntegratorConfig: renormalize_every must be >= 0");
    }
    const double w_max = std::max({std::abs(s.omega1), std::abs(s.omega2), 1.0});
    if (cfg.step > 0.01 * (2.0 * pi / w_max)) {
        throw std::invalid_argument("IntegratorConfig: step too coarse for the spectrum");
    }
}

struct Trajectory {
    std::vector<double> times;
    std::vector<Ket2> states;

    const Ket2& final_state() const {
        if (states.empty()) throw std::logic_error("Trajectory: empty");
        return states.back();
    }
};

// Classic RK4 on  i d/dt psi = H psi, i.e. psi' = -i H psi, with a shortened
// final step so the trajectory lands on t_end exactly.
inline Trajectory integrate_schrodinger(const SpectrumConfig& s, const Ket2& psi0,
                                        const IntegratorConfig& cfg) {
    validate(cfg, s);
    if (!is_finite(psi0)) throw std::invalid_argument("integrate_schrodinger: non-finite state");
    const Op2 h_op = build_hamiltonian(s);
    const auto f = [&h_op](const Ket2& y) -> Ket2 { return Complex(0, -1) * (h_op * y); };

    const auto n_full = static_cast<std::size_t>(std::floor(cfg.t_end / cfg.step));
    Trajectory tr;
    tr.times.reserve(n_full + 2);
    tr.states.reserve(n_full + 2);
    tr.times.push_back(0.0);
    tr.states.push_back(psi0);

    Ket2 y = psi0;
    double t = 0.0;
    std::size_t steps_done = 0;
    const auto advance = [&](double h) {
        const Ket2 k1 = f(y);
        const Ket2 k2 = f(Ket2(y + 0.5 * h * k1));
        const Ket2 k3 = f(Ket2(y + 0.5 * h * k2));
        const Ket2 k4 = f(Ket2(y + h * k3));
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ++steps_done;
        if (cfg.renormalize_every > 0 &&
            steps_done % static_cast<std::size_t>(cfg.renormalize_every) == 0) {
            y.normalize();
        }
    };

    for (std::size_t i = 0; i < n_full; ++i) {
        advance(cfg.step);
        t = static_cast<double>(i + 1) * cfg.step;
        tr.times.push_back(t);
        tr.states.push_back(y);
    }
    const double rem = cfg.t_end - t;
    if (rem > 1e-12 * cfg.step) {
        advance(rem);
        tr.times.push_back(cfg.t_end);
        tr.states.push_back(y);
    } else if (!tr.times.empty()) {
        tr.times.back() = cfg.t_end;
    }
    return tr;
}

inline double fidelity(const Ket2& a, const Ket2& b) { return std::abs(inner(a, b)); }

// --------------------------- Simpson quadrature ------------------------------

// Composite Simpson rule over an even number of panels. Signed when t1 < t0.
template <class F>
double simpson(F&& f, double t0, double t1, std::size_t panels) {
    if (panels == 0 || panels % 2 != 0) {
        throw std::invalid_argument("simpson: panel count must be even and positive");
    }
    if (!is_finite(t0) || !is_finite(t1)) {
        throw std::invalid_argument("simpson: non-finite bounds");
    }
    const double h = (t1 - t0) / static_cast<double>(panels);
    double sum = f(t0) + f(t1);
    double four = 0.0;
    double two = 0.0;
    for (std::size_t k = 1; k < panels; ++k) {
        const double x = t0 + static_cast<double>(k) * h;
        if (k % 2 == 1) {
            four += f(x);
        } else {
            two += f(x);
        }
    }
    return (h / 3.0) * (sum + 4.0 * four + 2.0 * two);
}

// Even panel count scaled to ~panels_per_cycle panels per fastest cycle.
inline std::size_t default_panels(const SpectrumConfig& s, double t0, double t1,
                                  std::size_t panels_per_cycle = 10000) {
    const double w_max = std::max({std::abs(s.omega1), std::abs(s.omega2), 1.0});
    const double cycles = std::abs(t1 - t0) * w_max / (2.0 * pi);
    auto n = static_cast<std::size_t>(
        std::ceil(std::max(1.0, cycles) * static_cast<double>(panels_per_cycle)));
    if (n % 2 != 0) ++n;
    return std::max<std::size_t>(n, 100);
}

// --------------------------- central differences -----------------------------

// O(h^2) two-sided derivative for any value type with vector-space arithmetic.
// The result is materialized into the function's value type, never left as an
// expression referring back to the two evaluations.
template <class F>
auto central_diff(F&& f, double t, double h = 1e-5) {
    if (!(h > 0.0) || !is_finite(h)) {
        throw std::domain_error("central_diff: step must be positive and finite");
    }
    using R = std::decay_t<decltype(f(t))>;
    const R hi = f(t + h);
    const R lo = f(t - h);
    return R((hi - lo) / (2.0 * h));
}

// --------------------------- purification tensor -----------------------------

enum class DoublingScheme {
    Computational,  // attach the copy along |0>,|1>:      |i>  ->  |i> (x) |i~>
    MixedPair,      // attach it along the t=0 doublet:    |xi> ->  |xi> (x) |xi~>
};

// 4-dimensional doubled state with both partial traces carried out explicitly.
// Index convention: state(2*i + j) multiplies |i> (x) |j~| in the scheme basis.
struct Purification {
    Eigen::Vector4cd state;
    Op2 rho_system;   // copy traced out
    Op2 rho_ancilla;  // system traced out
};

inline Purification purification_tensor(const SpectrumConfig& s, const MixingConfig& m,
                                        double t, DoublingScheme scheme,
                                        StateSelect which = StateSelect::Phi) {
    const Doublet z0 = build_mixed_basis(m);
    const Doublet zt = doublet_at(s, m, t);
    const Ket2& xi_t = select(zt, which);

    // Schmidt coefficients of the doubled state in the scheme basis.
    Complex c0;
    Complex c1;
    if (scheme == DoublingScheme::Computational) {
        c0 = xi_t(0);
        c1 = xi_t(1);
    } else {
        // Overlaps with the t = 0 pair, nothing assumed about their closed form.
        c0 = inner(select(z0, which), xi_t);
        c1 = inner(select(z0, partner(which)), xi_t);
    }

    Purification p;
    p.state = Eigen::Vector4cd::Zero();
    p.state(0) = c0;  // |0>(x)|0~>
    p.state(3) = c1;  // |1>(x)|1~>

    p.rho_system = Op2::Zero();
    p.rho_ancilla = Op2::Zero();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                p.rho_system(a, b) += p.state(2 * a + c) * std::conj(p.state(2 * b + c));
                p.rho_ancilla(a, b) += p.state(2 * c + a) * std::conj(p.state(2 * c + b));
            }
        }
    }
    return p;
}

}  // namespace qugauge
