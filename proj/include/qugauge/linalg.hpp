// linalg.hpp — fixed-dimension complex linear algebra for two-level states
// Thin, checked layer over Eigen's Vector2cd/Matrix2cd: kets, operators,
// Pauli matrices, and the closed-form one-parameter unitary exp(-i a sigma1).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qugauge {

using Complex = std::complex<double>;
using Ket2 = Eigen::Vector2cd;   // state vector in C^2
using Op2  = Eigen::Matrix2cd;   // operator on C^2

// Absolute tolerances for structural checks (unit norm, hermiticity, unitarity).
inline constexpr double state_norm_tol = 1e-12;
inline constexpr double structure_tol  = 1e-12;

inline bool is_finite(double x) noexcept { return std::isfinite(x); }
inline bool is_finite(const Complex& z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}
inline bool is_finite(const Ket2& v) noexcept { return is_finite(v(0)) && is_finite(v(1)); }
inline bool is_finite(const Op2& m) noexcept {
    return is_finite(Complex(m(0, 0))) && is_finite(Complex(m(0, 1))) &&
           is_finite(Complex(m(1, 0))) && is_finite(Complex(m(1, 1)));
}

// --------------------------------- bases ------------------------------------

inline Ket2 ket0() { return Ket2(Complex(1, 0), Complex(0, 0)); }
inline Ket2 ket1() { return Ket2(Complex(0, 0), Complex(1, 0)); }

inline Op2 identity2() { return Op2::Identity(); }

inline Op2 pauli1() {
    Op2 s;
    s << 0, 1,
         1, 0;
    return s;
}

inline Op2 pauli2() {
    Op2 s;
    s << Complex(0, 0), Complex(0, -1),
         Complex(0, 1), Complex(0, 0);
    return s;
}

inline Op2 pauli3() {
    Op2 s;
    s << 1, 0,
         0, -1;
    return s;
}

// ------------------------------ constructors --------------------------------

// Build a state from components; rejects non-finite input and (by default)
// anything that is not already normalized. Normalization is never silent.
inline Ket2 make_state(const Complex& c0, const Complex& c1) {
    if (!is_finite(c0) || !is_finite(c1)) {
        throw std::invalid_argument("make_state: non-finite component");
    }
    Ket2 v(c0, c1);
    if (std::abs(v.norm() - 1.0) > state_norm_tol) {
        throw std::invalid_argument("make_state: components are not unit-norm");
    }
    return v;
}

// Explicitly normalizing constructor; rejects the zero vector.
inline Ket2 make_state_normalized(const Complex& c0, const Complex& c1) {
    if (!is_finite(c0) || !is_finite(c1)) {
        throw std::invalid_argument("make_state_normalized: non-finite component");
    }
    Ket2 v(c0, c1);
    const double n = v.norm();
    if (n <= 0.0 || !std::isfinite(n)) {
        throw std::invalid_argument("make_state_normalized: zero or non-finite norm");
    }
    return v / n;
}

// ------------------------------- products -----------------------------------

// Hermitian inner product <a|b>; conjugation on the first argument.
inline Complex inner(const Ket2& a, const Ket2& b) { return a.dot(b); }

// Outer product |a><b|.
inline Op2 outer(const Ket2& a, const Ket2& b) { return a * b.adjoint(); }

// ------------------------------ diagnostics ---------------------------------

inline double max_abs(const Op2& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Ket2& v) { return v.cwiseAbs().maxCoeff(); }

// max-entry deviation from M = M†
inline double hermiticity_defect(const Op2& m) { return max_abs(Op2(m - m.adjoint())); }

// max-entry deviation from M†M = 1
inline double unitarity_defect(const Op2& m) {
    return max_abs(Op2(m.adjoint() * m - Op2::Identity()));
}

inline double norm_defect(const Ket2& v) { return std::abs(v.norm() - 1.0); }

// Bloch vector (<sigma1>, <sigma2>, <sigma3>) of a (unit) ket.
inline Eigen::Vector3d bloch(const Ket2& v) {
    const Complex z = std::conj(v(0)) * v(1);
    return {2.0 * z.real(), 2.0 * z.imag(), std::norm(v(0)) - std::norm(v(1))};
}

inline const Op2& require_hermitian(const Op2& m, double tol = structure_tol) {
    if (!is_finite(m)) throw std::invalid_argument("require_hermitian: non-finite entry");
    if (hermiticity_defect(m) > tol) {
        throw std::invalid_argument("require_hermitian: operator is not hermitian");
    }
    return m;
}

inline const Op2& require_unitary(const Op2& m, double tol = structure_tol) {
    if (!is_finite(m)) throw std::invalid_argument("require_unitary: non-finite entry");
    if (unitarity_defect(m) > tol) {
        throw std::invalid_argument("require_unitary: operator is not unitary");
    }
    return m;
}

// ----------------------- closed-form sigma1 exponential ----------------------

// exp(-i a sigma1) = cos(a) 1 - i sin(a) sigma1, evaluated in closed form
// (never by series). Unitary for every real a.
inline Op2 exp_sigma1(double a) {
    if (!std::isfinite(a)) throw std::domain_error("exp_sigma1: non-finite argument");
    const double c = std::cos(a);
    const Complex ms(0.0, -std::sin(a));
    Op2 u;
    u << Complex(c, 0), ms,
         ms, Complex(c, 0);
    return u;
}

}  // namespace qugauge
