#pragma once

#include <complex>
#include <span>
#include <vector>

#include "stabil/operator.hpp"
#include "stabil/region.hpp"

namespace stabil {

/// Second companion function G(z, w) = e^{-w beta(z)^2} F_2(z, w) / psi_0(z)
/// with beta = psi_1 / psi_0. The first companion coefficients c_n are
/// recovered pointwise from the moments, c_n(z) = sum_j psi_{n-j}(z) / (psi_0(z) (n-j)!) (-beta)^j / j!,
/// and are constant in z for operators of the admissible class.
class CompanionData {
 public:
  CompanionData(std::vector<ComplexPoly> moments, int t);

  const ComplexPoly& psi0() const { return moments_[0]; }
  const ComplexPoly& psi1() const { return moments_[1]; }
  int truncation() const { return t_; }

  /// Psi0Zero where psi_0(z) = 0.
  std::complex<double> beta(std::complex<double> z) const;

  /// c_0 .. c_{2T} at z.
  std::vector<std::complex<double>> c(std::complex<double> z) const;

  /// Coefficients g_n of G = sum g_n w^n / n!, n <= T.
  std::vector<std::complex<double>> g_coeffs(std::complex<double> z) const;

  /// Three rearrangements of the same truncated double series
  /// (terms c_{m+2n} w^{m+n} with m + n <= T).
  std::complex<double> g_series(std::complex<double> z, std::complex<double> w) const;
  std::complex<double> g_general(std::complex<double> z, std::complex<double> w) const;
  std::complex<double> g_beta(std::complex<double> z, std::complex<double> w) const;

  /// e^{-w beta^2} F_2^T(z, w) / psi_0(z) straight from the moments.
  std::complex<double> g_direct(std::complex<double> z, std::complex<double> w) const;

  /// Bound on |g_direct - G| from the F_2 tail plus rounding.
  double truncation_bound(std::complex<double> z, std::complex<double> w) const;

 private:
  std::vector<ComplexPoly> moments_;
  int t_;
};

/// TruncationTooDeep if N < 2T, RankTooLow below rank 2, Psi0Zero for psi_0 = 0.
CompanionData second_companion(const OperatorTruncation& a, int t);

struct MomentBound {
  int n = 0;
  bool proportional = false;
  /// psi_n = alpha psi_0 when proportional.
  std::complex<double> alpha;
  double max_ratio = 0.0;
  double bound = 1.0;
  bool passed = true;
};

struct MomentBoundReport {
  std::vector<MomentBound> moments;
  bool passed = true;
};

/// Proportional moments must satisfy |alpha| < 3; the others
/// |psi_n / psi_0| < 1 at the grid points inside omega. Psi0VanishesOnGrid if psi_0 has a zero there.
MomentBoundReport moment_bound_check(const OperatorTruncation& a, const Region& omega,
                                     std::span<const std::complex<double>> grid, double tol = 1e-10);

}  // namespace stabil
