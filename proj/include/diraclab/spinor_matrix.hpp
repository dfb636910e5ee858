// 4x4 complex matrices and 4-component spinors.  These carry every
// matrix-valued quantity in the library: gamma matrices, potentials,
// phase matrices and holonomies.  All tolerance checks use the
// entrywise max-abs norm.
#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace diraclab {

using Complex = std::complex<double>;

class SpinorMatrix {
 public:
  SpinorMatrix() : e_{} {}

  static SpinorMatrix identity() {
    SpinorMatrix m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }

  Complex& operator()(int row, int col) { return e_[4 * row + col]; }
  const Complex& operator()(int row, int col) const { return e_[4 * row + col]; }

  SpinorMatrix& operator+=(const SpinorMatrix& o) {
    for (int k = 0; k < 16; ++k) e_[k] += o.e_[k];
    return *this;
  }
  SpinorMatrix& operator-=(const SpinorMatrix& o) {
    for (int k = 0; k < 16; ++k) e_[k] -= o.e_[k];
    return *this;
  }
  SpinorMatrix& operator*=(Complex s) {
    for (int k = 0; k < 16; ++k) e_[k] *= s;
    return *this;
  }
  SpinorMatrix& operator*=(double s) {
    for (int k = 0; k < 16; ++k) e_[k] *= s;
    return *this;
  }

  SpinorMatrix adjoint() const {
    SpinorMatrix m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  Complex trace() const { return e_[0] + e_[5] + e_[10] + e_[15]; }

  double max_abs_norm() const {
    double n = 0.0;
    for (const Complex& v : e_) n = std::max(n, std::abs(v));
    return n;
  }

  bool all_finite() const {
    for (const Complex& v : e_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  bool is_hermitian(double tol) const;
  bool is_anti_hermitian(double tol) const;
  bool is_unitary(double tol) const;

 private:
  std::array<Complex, 16> e_;
};

inline SpinorMatrix operator+(SpinorMatrix a, const SpinorMatrix& b) { return a += b; }
inline SpinorMatrix operator-(SpinorMatrix a, const SpinorMatrix& b) { return a -= b; }
inline SpinorMatrix operator-(const SpinorMatrix& a) {
  SpinorMatrix m;
  return m -= a;
}

inline SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b) {
  SpinorMatrix m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Complex acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a(r, k) * b(k, c);
      m(r, c) = acc;
    }
  return m;
}

inline SpinorMatrix operator*(Complex s, SpinorMatrix m) { return m *= s; }
inline SpinorMatrix operator*(SpinorMatrix m, Complex s) { return m *= s; }
inline SpinorMatrix operator*(double s, SpinorMatrix m) { return m *= s; }
inline SpinorMatrix operator*(SpinorMatrix m, double s) { return m *= s; }

inline double max_abs_distance(const SpinorMatrix& a, const SpinorMatrix& b) {
  return (a - b).max_abs_norm();
}

inline bool SpinorMatrix::is_hermitian(double tol) const {
  return max_abs_distance(*this, adjoint()) <= tol;
}
inline bool SpinorMatrix::is_anti_hermitian(double tol) const {
  return max_abs_distance(*this, -adjoint()) <= tol;
}
inline bool SpinorMatrix::is_unitary(double tol) const {
  return max_abs_distance(adjoint() * (*this), identity()) <= tol;
}

// 4-component spinor value.
struct Spinor {
  std::array<Complex, 4> c{};

  Spinor& operator+=(const Spinor& o) {
    for (int k = 0; k < 4; ++k) c[k] += o.c[k];
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    for (int k = 0; k < 4; ++k) c[k] -= o.c[k];
    return *this;
  }
  Spinor& operator*=(Complex s) {
    for (int k = 0; k < 4; ++k) c[k] *= s;
    return *this;
  }

  double max_abs_norm() const {
    double n = 0.0;
    for (const Complex& v : c) n = std::max(n, std::abs(v));
    return n;
  }
};

inline Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
inline Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
inline Spinor operator*(Complex s, Spinor v) { return v *= s; }
inline Spinor operator*(Spinor v, Complex s) { return v *= s; }

inline Spinor operator*(const SpinorMatrix& m, const Spinor& v) {
  Spinor out;
  for (int r = 0; r < 4; ++r) {
    Complex acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += m(r, k) * v.c[k];
    out.c[r] = acc;
  }
  return out;
}

}  // namespace diraclab
