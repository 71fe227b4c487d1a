#pragma once

// Dense 3x3 tensor algebra for turbulence closure work. Everything is
// double precision and value-semantic; the flow problem is strictly 3D.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sgs {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// General 3x3 real tensor, row-major. Units (typically 1/time for
/// velocity gradients) are tracked by the caller, not the type.
class Tensor3 {
 public:
  Tensor3() : a_{} {}
  explicit Tensor3(const std::array<double, 9>& a) : a_(a) {}

  static Tensor3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return Tensor3({r0[0], r0[1], r0[2], r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]});
  }
  static Tensor3 diag(double a, double b, double c) {
    return Tensor3({a, 0, 0, 0, b, 0, 0, 0, c});
  }
  static Tensor3 identity() { return diag(1, 1, 1); }

  double operator()(int i, int j) const { return a_[3 * i + j]; }
  double& operator()(int i, int j) { return a_[3 * i + j]; }
  const std::array<double, 9>& data() const { return a_; }

  Tensor3& operator+=(const Tensor3& o) {
    for (int k = 0; k < 9; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    for (int k = 0; k < 9; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Tensor3& operator*=(double c) {
    for (int k = 0; k < 9; ++k) a_[k] *= c;
    return *this;
  }

  bool finite() const {
    for (double v : a_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  std::array<double, 9> a_;
};

inline Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
inline Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
inline Tensor3 operator*(double c, Tensor3 a) { return a *= c; }
inline Tensor3 operator-(const Tensor3& a) { return -1.0 * a; }

inline Tensor3 operator*(const Tensor3& a, const Tensor3& b) {
  Tensor3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

inline Vec3 operator*(const Tensor3& a, const Vec3& x) {
  return {a(0, 0) * x[0] + a(0, 1) * x[1] + a(0, 2) * x[2],
          a(1, 0) * x[0] + a(1, 1) * x[1] + a(1, 2) * x[2],
          a(2, 0) * x[0] + a(2, 1) * x[1] + a(2, 2) * x[2]};
}

inline double trace(const Tensor3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline Tensor3 transpose(const Tensor3& a) {
  Tensor3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

inline double frobenius(const Tensor3& a) {
  double s = 0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

inline double det(const Tensor3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// Q^d = Q - (1/3) tr(Q) Id. Trace-free and idempotent.
inline Tensor3 deviator(const Tensor3& q) {
  const double t = trace(q) / 3.0;
  Tensor3 r = q;
  r(0, 0) -= t;
  r(1, 1) -= t;
  r(2, 2) -= t;
  return r;
}

/// [P, Q] = PQ - QP. Always trace-free.
inline Tensor3 commutator(const Tensor3& p, const Tensor3& q) { return p * q - q * p; }

inline Tensor3 sym_part(const Tensor3& a) { return 0.5 * (a + transpose(a)); }
inline Tensor3 skew_part(const Tensor3& a) { return 0.5 * (a - transpose(a)); }

namespace detail {
// Relative asymmetry tolerance for the checked constructors. Inputs worse
// than this are rejected instead of silently projected: a badly asymmetric
// "strain rate" usually means a gradient bug upstream.
inline constexpr double kAsymmetryTol = 1e-12;

inline void require_finite(const Tensor3& m, const char* what) {
  if (!m.finite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}
}  // namespace detail

/// Symmetric 3x3 tensor. Houses strain rates, squared tensors, deviatoric
/// parts and subgrid stresses. entries(i,j) == entries(j,i) exactly.
class SymTensor3 {
 public:
  SymTensor3() : m_() {}

  /// Checked construction: rejects non-finite input and relative asymmetry
  /// beyond 1e-12, then symmetrizes exactly.
  explicit SymTensor3(const Tensor3& m) {
    detail::require_finite(m, "SymTensor3");
    const double scale = frobenius(m);
    const double asym = frobenius(m - transpose(m));
    if (asym > detail::kAsymmetryTol * std::max(scale, 1e-300))
      throw std::invalid_argument("SymTensor3: input asymmetry " + std::to_string(asym / std::max(scale, 1e-300)) +
                                  " exceeds tolerance");
    m_ = sym_part(m);
  }

  static SymTensor3 diag(double a, double b, double c) { return SymTensor3(Tensor3::diag(a, b, c)); }
  static SymTensor3 zero() { return SymTensor3(); }

  /// Unchecked wrap of a matrix known to be symmetric by construction
  /// (products like R S R^T are symmetrized to kill round-off skew).
  static SymTensor3 symmetrize(const Tensor3& m) {
    detail::require_finite(m, "SymTensor3");
    SymTensor3 s;
    s.m_ = sym_part(m);
    return s;
  }

  const Tensor3& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  SymTensor3& operator+=(const SymTensor3& o) {
    m_ += o.m_;
    return *this;
  }
  SymTensor3& operator-=(const SymTensor3& o) {
    m_ -= o.m_;
    return *this;
  }
  SymTensor3& operator*=(double c) {
    m_ *= c;
    return *this;
  }

 private:
  Tensor3 m_;
};

inline SymTensor3 operator+(SymTensor3 a, const SymTensor3& b) { return a += b; }
inline SymTensor3 operator-(SymTensor3 a, const SymTensor3& b) { return a -= b; }
inline SymTensor3 operator*(double c, SymTensor3 a) { return a *= c; }

/// Antisymmetric 3x3 tensor (vorticity). entries(i,j) == -entries(j,i),
/// zero diagonal, exactly.
class SkewTensor3 {
 public:
  SkewTensor3() : m_() {}

  explicit SkewTensor3(const Tensor3& m) {
    detail::require_finite(m, "SkewTensor3");
    const double scale = frobenius(m);
    const double sym = frobenius(m + transpose(m));
    if (sym > detail::kAsymmetryTol * std::max(scale, 1e-300))
      throw std::invalid_argument("SkewTensor3: symmetric residual " + std::to_string(sym / std::max(scale, 1e-300)) +
                                  " exceeds tolerance");
    m_ = skew_part(m);
    m_(0, 0) = m_(1, 1) = m_(2, 2) = 0.0;
  }

  /// Skew tensor from the off-diagonal upper triangle (w01, w02, w12).
  static SkewTensor3 from_upper(double w01, double w02, double w12) {
    SkewTensor3 w;
    w.m_(0, 1) = w01;
    w.m_(1, 0) = -w01;
    w.m_(0, 2) = w02;
    w.m_(2, 0) = -w02;
    w.m_(1, 2) = w12;
    w.m_(2, 1) = -w12;
    return w;
  }
  static SkewTensor3 zero() { return SkewTensor3(); }

  static SkewTensor3 antisymmetrize(const Tensor3& m) {
    detail::require_finite(m, "SkewTensor3");
    SkewTensor3 w;
    w.m_ = skew_part(m);
    w.m_(0, 0) = w.m_(1, 1) = w.m_(2, 2) = 0.0;
    return w;
  }

  const Tensor3& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  SkewTensor3& operator*=(double c) {
    m_ *= c;
    return *this;
  }

 private:
  Tensor3 m_;
};

inline SkewTensor3 operator*(double c, SkewTensor3 w) { return w *= c; }

/// |S| = sqrt(tr(S^2)); coincides with the Frobenius norm for symmetric S.
inline double frobenius_norm_S(const SymTensor3& s) { return frobenius(s.mat()); }

inline SymTensor3 deviator(const SymTensor3& s) { return SymTensor3::symmetrize(deviator(s.mat())); }

/// Velocity gradient split into strain rate S = (G + G^T)/2 and
/// vorticity Omega = (G - G^T)/2.
struct VelGradDecomposition {
  Tensor3 grad;
  SymTensor3 s;
  SkewTensor3 omega;
};

inline VelGradDecomposition decompose(const Tensor3& grad) {
  detail::require_finite(grad, "decompose");
  VelGradDecomposition d;
  d.grad = grad;
  d.s = SymTensor3::symmetrize(grad);
  d.omega = SkewTensor3::antisymmetrize(grad);
  return d;
}

/// Eigenvalues of a symmetric 3x3 tensor, ascending. Analytic
/// (trigonometric) method; used by positivity and bound checks.
std::array<double, 3> sym_eigenvalues(const SymTensor3& s);

}  // namespace sgs
