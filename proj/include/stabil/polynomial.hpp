#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "stabil/error.hpp"

namespace stabil {

/// Relative threshold below which a trailing coefficient does not count
/// towards the degree (scaled by the largest coefficient magnitude).
inline constexpr double kDefaultDegreeTol = 1e-12;

/// Dense univariate polynomial, coefficients stored in ascending order:
/// coeffs()[n] multiplies z^n.
template <typename Scalar_>
class Polynomial {
 public:
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Index = Eigen::Index;

  Polynomial() : coeffs_(Coefficients::Zero(1)) {}

  explicit Polynomial(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_ = Coefficients::Zero(1);
  }

  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(Coefficients::Zero(1)) {
    if (coeffs.size() > 0) {
      coeffs_.resize(static_cast<Index>(coeffs.size()));
      std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
    }
  }

  static Polynomial constant(Scalar c) { return Polynomial({c}); }

  static Polynomial monomial(Index n, Scalar c = Scalar(1)) {
    Coefficients v = Coefficients::Zero(n + 1);
    v[n] = c;
    return Polynomial(std::move(v));
  }

  /// c * prod (z - r) over the given roots.
  template <typename Range>
  static Polynomial from_roots(const Range& roots, Scalar leading = Scalar(1)) {
    Polynomial p = constant(leading);
    for (const auto& r : roots) {
      Coefficients next = Coefficients::Zero(p.size() + 1);
      next.tail(p.size()) += p.coeffs_;
      next.head(p.size()) -= Scalar(r) * p.coeffs_;
      p.coeffs_ = std::move(next);
    }
    return p;
  }

  const Coefficients& coeffs() const noexcept { return coeffs_; }
  Index size() const noexcept { return coeffs_.size(); }

  /// Coefficient of z^n; zero past the stored length.
  Scalar coeff(Index n) const { return n >= 0 && n < size() ? coeffs_[n] : Scalar(0); }
  Scalar operator[](Index n) const { return coeff(n); }

  RealScalar max_abs() const { return coeffs_.cwiseAbs().maxCoeff(); }
  RealScalar norm() const { return coeffs_.norm(); }
  RealScalar norm1() const { return coeffs_.cwiseAbs().sum(); }

  bool is_zero() const { return max_abs() == RealScalar(0); }

  /// Largest n with |c_n| > deg_tol * max|c|; -1 for the zero polynomial.
  Index degree(RealScalar deg_tol = kDefaultDegreeTol) const {
    const RealScalar scale = max_abs();
    if (scale == RealScalar(0)) return -1;
    const RealScalar cut = deg_tol * scale;
    for (Index n = size() - 1; n >= 0; --n) {
      if (std::abs(coeffs_[n]) > cut) return n;
    }
    return -1;
  }

  /// Drops coefficients above degree(deg_tol).
  Polynomial trimmed(RealScalar deg_tol = kDefaultDegreeTol) const {
    const Index d = degree(deg_tol);
    if (d < 0) return Polynomial();
    return Polynomial(Coefficients(coeffs_.head(d + 1)));
  }

  Scalar leading(RealScalar deg_tol = kDefaultDegreeTol) const {
    const Index d = degree(deg_tol);
    return d < 0 ? Scalar(0) : coeffs_[d];
  }

  /// Horner evaluation, highest coefficient first.
  Scalar operator()(const Scalar& z) const {
    Scalar acc = coeffs_[size() - 1];
    for (Index n = size() - 2; n >= 0; --n) acc = acc * z + coeffs_[n];
    return acc;
  }

  /// Sum_n |c_n| |z|^n, the natural scale for the rounding error of operator().
  RealScalar abs_eval(RealScalar r) const {
    RealScalar acc = std::abs(coeffs_[size() - 1]);
    for (Index n = size() - 2; n >= 0; --n) acc = acc * r + std::abs(coeffs_[n]);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.size() > size()) {
      Coefficients grown = Coefficients::Zero(rhs.size());
      grown.head(size()) = coeffs_;
      coeffs_ = std::move(grown);
    }
    coeffs_.head(rhs.size()) += rhs.coeffs_;
    return *this;
  }

  Polynomial& operator-=(const Polynomial& rhs) {
    if (rhs.size() > size()) {
      Coefficients grown = Coefficients::Zero(rhs.size());
      grown.head(size()) = coeffs_;
      coeffs_ = std::move(grown);
    }
    coeffs_.head(rhs.size()) -= rhs.coeffs_;
    return *this;
  }

  Polynomial& operator*=(const Scalar& s) {
    coeffs_ *= s;
    return *this;
  }

  Polynomial& operator/=(const Scalar& s) {
    coeffs_ /= s;
    return *this;
  }

 private:
  Coefficients coeffs_;
};

using ComplexPoly = Polynomial<std::complex<double>>;
using RealPoly = Polynomial<double>;

template <typename S>
Polynomial<S> operator+(Polynomial<S> lhs, const Polynomial<S>& rhs) {
  lhs += rhs;
  return lhs;
}

template <typename S>
Polynomial<S> operator-(Polynomial<S> lhs, const Polynomial<S>& rhs) {
  lhs -= rhs;
  return lhs;
}

template <typename S>
Polynomial<S> operator-(Polynomial<S> p) {
  p *= S(-1);
  return p;
}

template <typename S>
Polynomial<S> operator*(Polynomial<S> p, const S& s) {
  p *= s;
  return p;
}

template <typename S>
Polynomial<S> operator*(const S& s, Polynomial<S> p) {
  p *= s;
  return p;
}

template <typename S>
S eval(const Polynomial<S>& p, const S& z) {
  return p(z);
}

/// Strips trailing coefficients that are exactly zero.
template <typename S>
Polynomial<S> compact(const Polynomial<S>& p) {
  return p.trimmed(0);
}

/// Coefficient convolution.
template <typename S>
Polynomial<S> multiply(const Polynomial<S>& p, const Polynomial<S>& q) {
  const Polynomial<S> a = compact(p);
  const Polynomial<S> b = compact(q);
  using Coefficients = typename Polynomial<S>::Coefficients;
  Coefficients out = Coefficients::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.coeffs()[i] == S(0)) continue;
    out.segment(i, b.size()) += a.coeffs()[i] * b.coeffs();
  }
  return Polynomial<S>(std::move(out));
}

template <typename S>
Polynomial<S> operator*(const Polynomial<S>& p, const Polynomial<S>& q) {
  return multiply(p, q);
}

template <typename S>
Polynomial<S> pow(const Polynomial<S>& p, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative polynomial power");
  Polynomial<S> result = Polynomial<S>::constant(S(1));
  Polynomial<S> base = compact(p);
  while (n > 0) {
    if (n & 1) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

/// p(phi(z)), evaluated by Horner's scheme over polynomials.
template <typename S>
Polynomial<S> compose(const Polynomial<S>& p, const Polynomial<S>& phi) {
  const Polynomial<S> a = compact(p);
  const Polynomial<S> inner = compact(phi);
  Polynomial<S> acc = Polynomial<S>::constant(a.coeffs()[a.size() - 1]);
  for (Eigen::Index n = a.size() - 2; n >= 0; --n) {
    acc = multiply(acc, inner);
    acc += Polynomial<S>::constant(a.coeffs()[n]);
  }
  return acc;
}

template <typename S>
Polynomial<S> derivative(const Polynomial<S>& p) {
  if (p.size() <= 1) return Polynomial<S>();
  using Coefficients = typename Polynomial<S>::Coefficients;
  Coefficients out(p.size() - 1);
  for (Eigen::Index n = 1; n < p.size(); ++n) out[n - 1] = S(static_cast<double>(n)) * p.coeffs()[n];
  return Polynomial<S>(std::move(out));
}

template <typename S>
Polynomial<S> derivative(const Polynomial<S>& p, int order) {
  Polynomial<S> out = p;
  for (int k = 0; k < order; ++k) out = derivative(out);
  return out;
}

/// p(tau z): coefficient n scaled by tau^n.
template <typename S>
Polynomial<S> dilate(const Polynomial<S>& p, const S& tau) {
  typename Polynomial<S>::Coefficients out = p.coeffs();
  S scale(1);
  for (Eigen::Index n = 0; n < out.size(); ++n) {
    out[n] *= scale;
    scale *= tau;
  }
  return Polynomial<S>(std::move(out));
}

/// Returns r with p = q r when the least-squares remainder satisfies
/// |p - q r| <= tol |p|; empty otherwise.
template <typename S>
std::optional<Polynomial<S>> divide_exact(const Polynomial<S>& p, const Polynomial<S>& q,
                                          typename Polynomial<S>::RealScalar tol) {
  using Coefficients = typename Polynomial<S>::Coefficients;
  using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  if (q.is_zero()) throw Error(ErrorCode::DivisorZero, "division by the zero polynomial");
  if (p.is_zero()) return Polynomial<S>();

  const Polynomial<S> num = p.trimmed();
  const Polynomial<S> den = q.trimmed();
  const Eigen::Index dp = num.size() - 1;
  const Eigen::Index dq = den.size() - 1;
  if (dp < dq) return std::nullopt;

  const Eigen::Index n = dp - dq + 1;
  Matrix conv = Matrix::Zero(dp + 1, n);
  for (Eigen::Index j = 0; j < n; ++j) conv.block(j, j, dq + 1, 1) = den.coeffs();
  Coefficients quotient = conv.colPivHouseholderQr().solve(num.coeffs());
  const Coefficients remainder = num.coeffs() - conv * quotient;
  if (remainder.norm() > tol * num.norm()) return std::nullopt;
  return Polynomial<S>(std::move(quotient));
}

}  // namespace stabil
