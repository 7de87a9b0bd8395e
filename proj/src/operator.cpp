#include "stabil/operator.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace stabil {

namespace {

using Complex = std::complex<double>;

Eigen::Index max_size(std::span<const ComplexPoly> polys) {
  Eigen::Index rows = 1;
  for (const ComplexPoly& p : polys) rows = std::max(rows, compact(p).size());
  return rows;
}

void check_truncation(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "truncation order must be nonnegative");
}

}  // namespace

OperatorTruncation::OperatorTruncation(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.cols() == 0) {
    throw Error(ErrorCode::InvalidArgument, "operator truncation needs at least one row and column");
  }
}

OperatorTruncation OperatorTruncation::from_columns(std::span<const ComplexPoly> columns) {
  if (columns.empty()) throw Error(ErrorCode::InvalidArgument, "operator needs at least one column");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(max_size(columns), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t n = 0; n < columns.size(); ++n) {
    const ComplexPoly c = compact(columns[n]);
    m.col(static_cast<Eigen::Index>(n)).head(c.size()) = c.coeffs();
  }
  return OperatorTruncation(std::move(m));
}

MomentSequence moments(const OperatorTruncation& a) {
  MomentSequence out;
  for (int n = 0; n <= a.source_degree(); ++n) out.psi.push_back(a.column(n));
  return out;
}

ComplexPoly apply(const OperatorTruncation& a, ComplexPoly p) {
  const Eigen::Index d = p.degree();
  if (d > a.source_degree()) {
    throw Error(ErrorCode::DegreeOverflow, "input degree " + std::to_string(d) + " exceeds source bound " +
                                               std::to_string(a.source_degree()));
  }
  if (d < 0) return ComplexPoly::constant(0.0);
  return ComplexPoly(Eigen::VectorXcd(a.matrix().leftCols(d + 1) * p.coeffs().head(d + 1)));
}

bool negligible_image(const OperatorTruncation& a, const ComplexPoly& p, const ComplexPoly& image) {
  double scale = 0.0;
  const Eigen::Index d = std::min<Eigen::Index>(p.size() - 1, a.source_degree());
  for (Eigen::Index n = 0; n <= d; ++n) scale += std::abs(p.coeffs()[n]) * a.matrix().col(n).cwiseAbs().sum();
  const double eps = std::numeric_limits<double>::epsilon();
  return image.norm1() <= 64.0 * eps * static_cast<double>(d + 1) * scale;
}

OperatorTruncation identity_operator(int n) {
  check_truncation(n);
  return OperatorTruncation(Eigen::MatrixXcd::Identity(n + 1, n + 1));
}

OperatorTruncation zero_operator(int n) {
  check_truncation(n);
  return OperatorTruncation(Eigen::MatrixXcd::Zero(1, n + 1));
}

OperatorTruncation make_product_composition(const ComplexPoly& psi, const ComplexPoly& phi, int n) {
  check_truncation(n);
  if (psi.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "multiplier psi must be nonzero");
  std::vector<ComplexPoly> columns;
  ComplexPoly col = compact(psi);
  const ComplexPoly f = compact(phi);
  for (int k = 0; k <= n; ++k) {
    columns.push_back(col);
    if (k < n) col = multiply(col, f);
  }
  return OperatorTruncation::from_columns(columns);
}

OperatorTruncation make_rank1(std::span<const Complex> nu, const ComplexPoly& psi, int n) {
  check_truncation(n);
  if (static_cast<int>(nu.size()) != n + 1) {
    throw Error(ErrorCode::InvalidArgument, "functional needs N + 1 = " + std::to_string(n + 1) + " values, got " +
                                                std::to_string(nu.size()));
  }
  const ComplexPoly f = compact(psi);
  Eigen::MatrixXcd m(f.size(), n + 1);
  for (int k = 0; k <= n; ++k) m.col(k) = nu[static_cast<std::size_t>(k)] * f.coeffs();
  return OperatorTruncation(std::move(m));
}

OperatorTruncation make_dilation(Complex tau, int n) {
  check_truncation(n);
  if (tau == Complex(0.0)) throw Error(ErrorCode::TauZero, "dilation factor must be nonzero");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  Complex power = 1.0;
  for (int k = 0; k <= n; ++k) {
    m(k, k) = power;
    power *= tau;
  }
  return OperatorTruncation(std::move(m));
}

OperatorTruncation make_pcd(const ComplexPoly& psi, const ComplexPoly& phi, int order, int n) {
  check_truncation(n);
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be nonnegative");
  const ComplexPoly multiplier = compact(psi);
  const ComplexPoly f = compact(phi);
  std::vector<ComplexPoly> columns;
  for (int k = 0; k <= n; ++k) {
    if (k < order) {
      columns.push_back(ComplexPoly::constant(0.0));
      continue;
    }
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= static_cast<double>(k - j);
    columns.push_back(multiply(multiplier, pow(f, k - order)) * Complex(falling));
  }
  return OperatorTruncation::from_columns(columns);
}

OperatorTruncation compose_operators(const OperatorTruncation& a, const OperatorTruncation& b) {
  if (b.target_degree() > a.source_degree()) {
    throw Error(ErrorCode::DegreeOverflow, "inner operator reaches degree " + std::to_string(b.target_degree()) +
                                               " beyond the outer source bound " +
                                               std::to_string(a.source_degree()));
  }
  return OperatorTruncation(a.matrix().leftCols(b.matrix().rows()) * b.matrix());
}

bool is_algebra_homomorphism(const OperatorTruncation& a, double tol) {
  const int n = a.source_degree();
  const MomentSequence m = moments(a);
  if ((m.psi[0] - ComplexPoly::constant(1.0)).max_abs() > tol) return false;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; i + j <= n; ++j) {
      const ComplexPoly product = multiply(m.psi[i], m.psi[j]);
      const double scale = std::max(1.0, product.max_abs());
      if ((m.psi[i + j] - product).max_abs() > tol * scale) return false;
    }
  }
  return true;
}

int rank_estimate(const OperatorTruncation& a, double tol) {
  Eigen::MatrixXcd m = a.matrix();
  const double largest = m.colwise().norm().maxCoeff();
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const double norm = m.col(k).norm();
    if (norm > 1e-14 * largest) {
      m.col(k) /= norm;
    } else {
      m.col(k).setZero();
    }
  }
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > tol * s[0]) ++rank;
  }
  return rank;
}

}  // namespace stabil
