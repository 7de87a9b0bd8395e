#pragma once

#include <complex>
#include <vector>

#include "stabil/polynomial.hpp"

namespace stabil {

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
};

/// Zeros of a polynomial with multiplicity. `residual` is the largest
/// |p(r)| / |leading coefficient| over the reported roots; every root stays
/// below `residual_bound`.
struct RootSet {
  std::vector<Root> roots;
  double residual = 0.0;
  double residual_bound = 0.0;

  int total_multiplicity() const;
  /// Roots repeated according to multiplicity, in reported order.
  std::vector<std::complex<double>> flattened() const;
};

struct RootOptions {
  double deg_tol = kDefaultDegreeTol;
  /// Polished roots closer than cluster_tol * max(1, |r|) are merged.
  double cluster_tol = 1e-7;
};

/// Companion-matrix eigenvalues followed by one Newton step per root.
/// Roots are reported sorted by (real, imag) and the result is
/// deterministic for a fixed input.
RootSet roots(const ComplexPoly& p, const RootOptions& options = {});

}  // namespace stabil
