// Copyright 2026 The holonoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace holonoise {

using cd = std::complex<double>;

/// Tolerance for the structural invariants of 2x2 gates and states.
inline constexpr double kStructuralTol = 1e-12;

class MalformedState : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dense 2x2 complex matrix, row-major.
class C2Matrix {
  public:
    constexpr C2Matrix() = default;
    constexpr C2Matrix(cd m00, cd m01, cd m10, cd m11) : e_{m00, m01, m10, m11} {}

    static constexpr C2Matrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr C2Matrix zero() { return {}; }

    constexpr cd operator()(int row, int col) const { return e_[2 * row + col]; }
    constexpr cd &operator()(int row, int col) { return e_[2 * row + col]; }
    constexpr const std::array<cd, 4> &entries() const { return e_; }

    C2Matrix adjoint() const {
        return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
    }
    cd trace() const { return e_[0] + e_[3]; }
    cd determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

    bool is_finite() const {
        for (const cd &z : e_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

    /// Largest entrywise modulus.
    double max_abs() const {
        double m = 0.0;
        for (const cd &z : e_) m = std::max(m, std::abs(z));
        return m;
    }

    friend C2Matrix operator+(const C2Matrix &a, const C2Matrix &b) {
        return {a.e_[0] + b.e_[0], a.e_[1] + b.e_[1], a.e_[2] + b.e_[2], a.e_[3] + b.e_[3]};
    }
    friend C2Matrix operator-(const C2Matrix &a, const C2Matrix &b) {
        return {a.e_[0] - b.e_[0], a.e_[1] - b.e_[1], a.e_[2] - b.e_[2], a.e_[3] - b.e_[3]};
    }
    friend C2Matrix operator*(cd s, const C2Matrix &a) {
        return {s * a.e_[0], s * a.e_[1], s * a.e_[2], s * a.e_[3]};
    }
    friend C2Matrix operator*(const C2Matrix &a, const C2Matrix &b) {
        return {a.e_[0] * b.e_[0] + a.e_[1] * b.e_[2], a.e_[0] * b.e_[1] + a.e_[1] * b.e_[3],
                a.e_[2] * b.e_[0] + a.e_[3] * b.e_[2], a.e_[2] * b.e_[1] + a.e_[3] * b.e_[3]};
    }
    C2Matrix &operator+=(const C2Matrix &b) { return *this = *this + b; }

    friend bool operator==(const C2Matrix &, const C2Matrix &) = default;

  private:
    std::array<cd, 4> e_{};
};

/// Entrywise max |a - b|.
inline double max_abs_diff(const C2Matrix &a, const C2Matrix &b) { return (a - b).max_abs(); }

inline bool is_hermitian(const C2Matrix &m, double tol = kStructuralTol) {
    return max_abs_diff(m, m.adjoint()) <= tol;
}

inline bool is_anti_hermitian(const C2Matrix &m, double tol = kStructuralTol) {
    return (m + m.adjoint()).max_abs() <= tol;
}

inline bool is_unitary(const C2Matrix &m, double tol = kStructuralTol) {
    return max_abs_diff(m.adjoint() * m, C2Matrix::identity()) <= tol;
}

/// Eigenvalues of a Hermitian 2x2 matrix, ascending. Closed-form quadratic.
inline std::array<double, 2> hermitian_eigenvalues(const C2Matrix &m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {mean - half_gap, mean + half_gap};
}

enum class Axis { x, y, z };

inline constexpr C2Matrix pauli(Axis axis) {
    switch (axis) {
    case Axis::x: return {0.0, 1.0, 1.0, 0.0};
    case Axis::y: return {0.0, cd{0.0, -1.0}, cd{0.0, 1.0}, 0.0};
    case Axis::z: return {1.0, 0.0, 0.0, -1.0};
    }
    return {};
}

/// Computational basis label |j>; its complement is |nj>.
enum class Basis : int { zero = 0, one = 1 };

inline constexpr int index(Basis j) { return static_cast<int>(j); }
inline constexpr Basis complement(Basis j) { return j == Basis::zero ? Basis::one : Basis::zero; }
/// (-1)^j
inline constexpr double parity_sign(Basis j) { return j == Basis::zero ? 1.0 : -1.0; }

/// A 2x2 matrix known to be unitary.
class UnitaryGate {
  public:
    UnitaryGate() : m_(C2Matrix::identity()) {}

    /// Throws MalformedState unless U^dagger U = 1 within `tol`.
    static UnitaryGate from_matrix(const C2Matrix &m, double tol = kStructuralTol) {
        if (!m.is_finite() || !is_unitary(m, tol)) {
            throw MalformedState("matrix is not unitary");
        }
        return UnitaryGate(m);
    }

    const C2Matrix &matrix() const { return m_; }
    UnitaryGate adjoint() const { return UnitaryGate(m_.adjoint()); }

    /// `a * b` applies b first.
    friend UnitaryGate operator*(const UnitaryGate &a, const UnitaryGate &b) {
        return UnitaryGate(a.m_ * b.m_);
    }

    /// Phase factor from exp(i phi) * U.
    UnitaryGate with_phase(double phi) const { return UnitaryGate(std::polar(1.0, phi) * m_); }

  private:
    explicit UnitaryGate(const C2Matrix &m) : m_(m) {}
    C2Matrix m_;
};

/// exp(-i (c_x sigma_x + c_y sigma_y + c_z sigma_z)) in closed form.
inline UnitaryGate su2_exp(double cx, double cy, double cz) {
    const double theta = std::sqrt(cx * cx + cy * cy + cz * cz);
    const double c = std::cos(theta);
    // sin(theta)/theta, with the series near zero so theta = 0 needs no division
    const double sinc = theta < 1e-6 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
    const cd mi{0.0, -1.0};
    const C2Matrix m{cd{c, 0.0} + mi * (sinc * cz), mi * cd{sinc * cx, -sinc * cy},
                     mi * cd{sinc * cx, sinc * cy}, cd{c, 0.0} - mi * (sinc * cz)};
    return UnitaryGate::from_matrix(m);
}

inline UnitaryGate su2_exp(const std::array<double, 3> &c) { return su2_exp(c[0], c[1], c[2]); }

/// exp(G) for an anti-Hermitian G, as a phase times an su(2) exponential.
inline UnitaryGate exp_anti_hermitian(const C2Matrix &g) {
    // G = i (h0 + h . sigma)  =>  exp(G) = e^{i h0} su2_exp(-h)
    const cd h00 = g(0, 0) * cd{0.0, -1.0};
    const cd h01 = g(0, 1) * cd{0.0, -1.0};
    const cd h10 = g(1, 0) * cd{0.0, -1.0};
    const cd h11 = g(1, 1) * cd{0.0, -1.0};
    const double h0 = 0.5 * (h00.real() + h11.real());
    const double hx = 0.5 * (h01.real() + h10.real());
    const double hy = 0.5 * (h10.imag() - h01.imag());
    const double hz = 0.5 * (h00.real() - h11.real());
    return su2_exp(-hx, -hy, -hz).with_phase(h0);
}

/// Hermitian, unit-trace, positive-semidefinite 2x2 matrix.
class DensityMatrix {
  public:
    /// Throws MalformedState if any invariant fails within `tol`.
    static DensityMatrix from_matrix(const C2Matrix &m, double tol = kStructuralTol) {
        if (!m.is_finite()) throw MalformedState("density matrix has non-finite entries");
        if (!is_hermitian(m, tol)) throw MalformedState("density matrix is not Hermitian");
        if (std::abs(m.trace() - 1.0) > tol) throw MalformedState("density matrix trace is not 1");
        if (hermitian_eigenvalues(m)[0] < -tol) {
            throw MalformedState("density matrix has a negative eigenvalue");
        }
        return DensityMatrix(m);
    }

    static DensityMatrix basis_state(Basis j) {
        return j == Basis::zero ? DensityMatrix({1.0, 0.0, 0.0, 0.0})
                                : DensityMatrix({0.0, 0.0, 0.0, 1.0});
    }
    static DensityMatrix maximally_mixed() { return DensityMatrix({0.5, 0.0, 0.0, 0.5}); }

    const C2Matrix &matrix() const { return m_; }
    cd operator()(int row, int col) const { return m_(row, col); }
    /// <a| rho |b>
    cd element(Basis a, Basis b) const { return m_(index(a), index(b)); }

  private:
    explicit DensityMatrix(const C2Matrix &m) : m_(m) {}
    C2Matrix m_;
};

/// g |j><j| g^dagger
inline DensityMatrix conjugate_state(const UnitaryGate &g, Basis j) {
    const C2Matrix &u = g.matrix();
    const cd a0 = u(0, index(j));
    const cd a1 = u(1, index(j));
    const C2Matrix rho{std::norm(a0), a0 * std::conj(a1), a1 * std::conj(a0), std::norm(a1)};
    return DensityMatrix::from_matrix(rho);
}

/// tr(reference * state). Linear overlap; equals |<psi|phi>|^2 for pure states.
inline double fidelity(const DensityMatrix &reference, const DensityMatrix &state) {
    const cd f = (reference.matrix() * state.matrix()).trace();
    if (std::abs(f.imag()) > kStructuralTol) throw MalformedState("fidelity is not real");
    return f.real();
}

/// tr(rho^2)
inline double purity(const DensityMatrix &state) {
    const C2Matrix &m = state.matrix();
    return m(0, 0).real() * m(0, 0).real() + m(1, 1).real() * m(1, 1).real() +
           2.0 * std::norm(m(0, 1));
}

} // namespace holonoise
