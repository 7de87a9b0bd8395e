#pragma once

#include <complex>
#include <span>
#include <vector>

#include "stabil/operator.hpp"

namespace stabil {

/// F_k(z, w) = sum_{n <= T} psi_{kn}(z) w^n / n!.
struct CharFnTruncation {
  int k = 1;
  int T = 0;
  std::vector<ComplexPoly> coeff_polys;

  std::complex<double> operator()(std::complex<double> z, std::complex<double> w) const;

  /// sum_n (sum_j |c_j| |z|^j) |w|^n / n! over the coefficients of psi_{kn};
  /// bounds every partial sum and scales the rounding error.
  double abs_sum(std::complex<double> z, std::complex<double> w) const;
};

/// TruncationTooDeep when N < k T.
CharFnTruncation char_fn(const OperatorTruncation& a, int k, int t);

/// 3 |psi0(z)| |w|^{T+1} e^{|w|} / (T+1)!, the tail of F_k past order T
/// whenever |psi_{kn}| <= 3 |psi_0| pointwise.
double tail_bound(std::complex<double> psi0_z, std::complex<double> w, int t);

struct ZeroProbeReport {
  double min_abs = 0.0;
  double max_abs = 0.0;
  std::complex<double> argmin;
  /// Largest tail plus rounding bound over the grid.
  double error_bound = 0.0;
};

ZeroProbeReport zero_independence_probe(const CharFnTruncation& f, std::complex<double> w0,
                                        std::span<const std::complex<double>> zgrid);

struct F2ScanReport {
  double min_abs = 0.0;
  std::complex<double> argmin_z;
  std::complex<double> argmin_w;
  /// Error bound at the minimizing point and the largest over the grid.
  double bound_at_min = 0.0;
  double max_bound = 0.0;
  /// |F_2| exceeds its own error bound at every grid point.
  bool separated = true;
};

F2ScanReport f2_zero_scan(const OperatorTruncation& a, int t, std::span<const std::complex<double>> zgrid,
                          std::span<const std::complex<double>> wgrid);

}  // namespace stabil
