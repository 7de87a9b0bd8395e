#pragma once

#include <complex>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stabil {

using Rational = boost::multiprecision::cpp_rational;

/// Truncated Taylor data of prod_n e^{w/w_n} (1 - w/w_n).
struct CanonicalProduct {
  std::vector<std::complex<double>> zeros;
  int T = 0;
  /// c[0..T]
  std::vector<std::complex<double>> c;
  /// sum 1/|w_n|
  double gamma = 0.0;
  /// sum 1/w_n
  std::complex<double> sigma_sum;
};

/// ZeroAtOrigin when some w_n = 0.
CanonicalProduct canonical_product(std::span<const std::complex<double>> zeros, int t);

/// |c_n| <= (gamma + |sigma_sum|)^n / n! + slack for every n <= T.
bool coeff_bound_check(const CanonicalProduct& cp, double slack = 1e-12);

/// n! sum_{j <= n} c_{n-j} beta^j / j!.
std::complex<double> moment_formula(std::span<const std::complex<double>> c, std::complex<double> beta, int n);

struct IdentitySides {
  Rational lhs;
  Rational rhs;
};

/// Both sides of
///   sum_{m<=n} sum_{j<=m} c_{2m-j} (2m-j)! / (j! (m-j)! (n-m)!) 2^j beta^{j+2n-2m}
///     = sum_{j<=2n} c_{2n-j} (2n)! / (j! n!) beta^j
/// in exact rational arithmetic; c needs 2n + 1 entries.
IdentitySides combinatorial_identity_sides(int n, std::span<const Rational> c, const Rational& beta);

bool combinatorial_identity_check(int n, std::span<const Rational> c, const Rational& beta);

}  // namespace stabil
