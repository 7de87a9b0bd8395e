#include "stabil/canonical.hpp"

#include <cmath>

#include "stabil/error.hpp"

namespace stabil {

namespace {

using Complex = std::complex<double>;

Rational factorial(int n) {
  Rational out = 1;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

Rational power(const Rational& x, int n) {
  Rational out = 1;
  for (int k = 0; k < n; ++k) out *= x;
  return out;
}

}  // namespace

CanonicalProduct canonical_product(std::span<const Complex> zeros, int t) {
  if (t < 0) throw Error(ErrorCode::InvalidArgument, "truncation order must be nonnegative");
  CanonicalProduct out;
  out.zeros.assign(zeros.begin(), zeros.end());
  out.T = t;
  out.c.assign(static_cast<std::size_t>(t) + 1, Complex(0.0));
  out.c[0] = 1.0;

  std::vector<Complex> factor(out.c.size());
  std::vector<Complex> next(out.c.size());
  for (const Complex& w : zeros) {
    if (w == Complex(0.0)) throw Error(ErrorCode::ZeroAtOrigin, "canonical product zeros must be nonzero");
    const Complex a = 1.0 / w;
    out.gamma += std::abs(a);
    out.sigma_sum += a;
    // e^{x} (1 - x) = sum_k (1 - k) x^k / k!
    Complex ak = 1.0;
    double inv_fact = 1.0;
    for (int k = 0; k <= t; ++k) {
      factor[static_cast<std::size_t>(k)] = ak * (1.0 - k) * inv_fact;
      ak *= a;
      inv_fact /= (k + 1);
    }
    for (int n = 0; n <= t; ++n) {
      Complex s = 0.0;
      for (int k = 0; k <= n; ++k) s += out.c[static_cast<std::size_t>(n - k)] * factor[static_cast<std::size_t>(k)];
      next[static_cast<std::size_t>(n)] = s;
    }
    out.c.swap(next);
  }
  return out;
}

bool coeff_bound_check(const CanonicalProduct& cp, double slack) {
  const double y = cp.gamma + std::abs(cp.sigma_sum);
  double bound = 1.0;
  for (int n = 0; n <= cp.T; ++n) {
    if (std::abs(cp.c[static_cast<std::size_t>(n)]) > bound + slack) return false;
    bound *= y / (n + 1);
  }
  return true;
}

Complex moment_formula(std::span<const Complex> c, Complex beta, int n) {
  if (n < 0 || static_cast<int>(c.size()) <= n) {
    throw Error(ErrorCode::InvalidArgument, "moment formula needs more than n coefficients");
  }
  Complex sum = 0.0;
  Complex term = 1.0;  // beta^j / j!
  for (int j = 0; j <= n; ++j) {
    sum += c[static_cast<std::size_t>(n - j)] * term;
    term *= beta / static_cast<double>(j + 1);
  }
  return std::tgamma(n + 1.0) * sum;
}

IdentitySides combinatorial_identity_sides(int n, std::span<const Rational> c, const Rational& beta) {
  if (n < 0 || static_cast<int>(c.size()) < 2 * n + 1) {
    throw Error(ErrorCode::InvalidArgument, "identity needs 2n + 1 coefficients");
  }
  IdentitySides out;
  for (int m = 0; m <= n; ++m) {
    for (int j = 0; j <= m; ++j) {
      out.lhs += c[static_cast<std::size_t>(2 * m - j)] * factorial(2 * m - j) /
                 (factorial(j) * factorial(m - j) * factorial(n - m)) * power(2, j) * power(beta, j + 2 * n - 2 * m);
    }
  }
  const Rational scale = factorial(2 * n) / factorial(n);
  for (int j = 0; j <= 2 * n; ++j) {
    out.rhs += c[static_cast<std::size_t>(2 * n - j)] * scale / factorial(j) * power(beta, j);
  }
  return out;
}

bool combinatorial_identity_check(int n, std::span<const Rational> c, const Rational& beta) {
  const IdentitySides s = combinatorial_identity_sides(n, c, beta);
  return s.lhs == s.rhs;
}

}  // namespace stabil
