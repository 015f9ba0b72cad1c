#pragma once

// Two-dimensional complex linear algebra: kets and 2x2 operators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace jbg {

using Complex = std::complex<double>;

struct QubitState {
  std::array<Complex, 2> amplitudes{Complex{1.0, 0.0}, Complex{0.0, 0.0}};

  const Complex& operator[](std::size_t i) const { return amplitudes[i]; }
  Complex& operator[](std::size_t i) { return amplitudes[i]; }

  double norm_squared() const { return std::norm(amplitudes[0]) + std::norm(amplitudes[1]); }
  double norm() const { return std::sqrt(norm_squared()); }

  QubitState normalized() const {
    const double n = norm();
    return {{amplitudes[0] / n, amplitudes[1] / n}};
  }

  // Global phase fixed so the first amplitude with modulus above `eps` is real positive.
  QubitState canonical(double eps = 1e-14) const {
    for (const Complex& a : amplitudes) {
      if (std::abs(a) > eps) {
        const Complex phase = std::conj(a) / std::abs(a);
        return {{amplitudes[0] * phase, amplitudes[1] * phase}};
      }
    }
    return *this;
  }

  // The state orthogonal to this one, (-b*, a*).
  QubitState orthogonal() const {
    return {{-std::conj(amplitudes[1]), std::conj(amplitudes[0])}};
  }
};

inline QubitState operator*(Complex scale, const QubitState& v) {
  return {{scale * v[0], scale * v[1]}};
}

inline QubitState operator+(const QubitState& a, const QubitState& b) {
  return {{a[0] + b[0], a[1] + b[1]}};
}

inline QubitState operator-(const QubitState& a, const QubitState& b) {
  return {{a[0] - b[0], a[1] - b[1]}};
}

/// <a|b>
inline Complex inner(const QubitState& a, const QubitState& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

/// |<a|b>|^2 for normalized states.
inline double fidelity(const QubitState& a, const QubitState& b) { return std::norm(inner(a, b)); }

/// Largest elementwise modulus of a - b after aligning b's global phase to a.
inline double distance_up_to_phase(const QubitState& a, const QubitState& b) {
  const Complex overlap = inner(b, a);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  const QubitState d = a - phase * b;
  return std::max(std::abs(d[0]), std::abs(d[1]));
}

struct Matrix2 {
  // Row-major: m[row][col].
  std::array<std::array<Complex, 2>, 2> m{};

  const Complex& operator()(std::size_t r, std::size_t c) const { return m[r][c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return m[r][c]; }

  static Matrix2 identity() {
    Matrix2 id;
    id(0, 0) = 1.0;
    id(1, 1) = 1.0;
    return id;
  }

  /// |ket><bra|
  static Matrix2 outer(const QubitState& ket, const QubitState& bra) {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) out(r, c) = ket[r] * std::conj(bra[c]);
    }
    return out;
  }

  Matrix2 adjoint() const {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) out(r, c) = std::conj(m[c][r]);
    }
    return out;
  }

  QubitState apply(const QubitState& v) const {
    return {{m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]}};
  }

  Matrix2 operator*(const Matrix2& rhs) const {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        out(r, c) = m[r][0] * rhs(0, c) + m[r][1] * rhs(1, c);
      }
    }
    return out;
  }

  Matrix2 operator+(const Matrix2& rhs) const {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) out(r, c) = m[r][c] + rhs(r, c);
    }
    return out;
  }

  Matrix2 operator-(const Matrix2& rhs) const {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) out(r, c) = m[r][c] - rhs(r, c);
    }
    return out;
  }

  Matrix2 operator*(Complex scale) const {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) out(r, c) = scale * m[r][c];
    }
    return out;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& row : m) {
      for (const Complex& x : row) best = std::max(best, std::abs(x));
    }
    return best;
  }

  /// Eigenvalues (ascending) assuming the matrix is Hermitian.
  std::array<double, 2> hermitian_eigenvalues() const {
    const double a = m[0][0].real();
    const double d = m[1][1].real();
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(m[0][1]));
    const double mean = 0.5 * (a + d);
    return {mean - half_gap, mean + half_gap};
  }
};

}  // namespace jbg
