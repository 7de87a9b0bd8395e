#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "stabil/polynomial.hpp"

namespace stabil {

/// Finite section of a linear map on polynomials: column n of matrix()
/// holds the coefficients of A(z^n), 0 <= n <= N, each of degree <= M.
class OperatorTruncation {
 public:
  OperatorTruncation() : matrix_(Eigen::MatrixXcd::Zero(1, 1)) {}
  explicit OperatorTruncation(Eigen::MatrixXcd matrix);

  /// Columns are padded with zeros to a common length.
  static OperatorTruncation from_columns(std::span<const ComplexPoly> columns);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  int source_degree() const noexcept { return static_cast<int>(matrix_.cols()) - 1; }
  int target_degree() const noexcept { return static_cast<int>(matrix_.rows()) - 1; }

  ComplexPoly column(int n) const { return ComplexPoly(Eigen::VectorXcd(matrix_.col(n))); }

 private:
  Eigen::MatrixXcd matrix_;
};

/// Moments psi_n = A(z^n).
struct MomentSequence {
  std::vector<ComplexPoly> psi;
};

MomentSequence moments(const OperatorTruncation& a);

/// sum_n p_n A(z^n); DegreeOverflow when deg p > N.
/// Takes p by value so that unqualified calls beat std::apply, which ADL
/// drags in through std::complex.
ComplexPoly apply(const OperatorTruncation& a, ComplexPoly p);

/// True when `image` = apply(a, p) is indistinguishable from zero at the
/// rounding level of the sum that produced it.
bool negligible_image(const OperatorTruncation& a, const ComplexPoly& p, const ComplexPoly& image);

OperatorTruncation identity_operator(int n);
OperatorTruncation zero_operator(int n);

/// Column n = psi * phi^n.
OperatorTruncation make_product_composition(const ComplexPoly& psi, const ComplexPoly& phi, int n);

/// Column n = nu[n] * psi; nu must have n + 1 entries.
OperatorTruncation make_rank1(std::span<const std::complex<double>> nu, const ComplexPoly& psi, int n);

/// Column n = tau^n z^n.
OperatorTruncation make_dilation(std::complex<double> tau, int n);

/// Column k = psi * (D^order z^k) o phi.
OperatorTruncation make_pcd(const ComplexPoly& psi, const ComplexPoly& phi, int order, int n);

/// A o B; DegreeOverflow when the target degree of B exceeds the source degree of A.
OperatorTruncation compose_operators(const OperatorTruncation& a, const OperatorTruncation& b);

/// A(1) = 1 and A(z^{m+n}) = A(z^m) A(z^n) for m + n <= N, within tol
/// relative to the size of each product.
bool is_algebra_homomorphism(const OperatorTruncation& a, double tol = 1e-10);

/// Numerical rank of the column-equilibrated coefficient matrix; singular
/// values below tol * sigma_max are dropped.
int rank_estimate(const OperatorTruncation& a, double tol = 1e-10);

}  // namespace stabil
