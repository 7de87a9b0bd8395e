#include "stabil/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace stabil {

namespace {

using Complex = std::complex<double>;

// Parlett-Reinsch diagonal similarity scaling; improves eigenvalue accuracy
// for companion matrices with widely spread coefficients.
void balance(Eigen::MatrixXcd& a) {
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
    if (converged) break;
  }
}

bool root_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<Complex> companion_eigenvalues(const ComplexPoly& monic) {
  const Eigen::Index d = monic.size() - 1;
  if (d == 1) return {-monic.coeffs()[0]};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) c(i, d - 1) = -monic.coeffs()[i];
  balance(c);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "companion eigenvalue iteration did not converge");
  }
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

int RootSet::total_multiplicity() const {
  return std::accumulate(roots.begin(), roots.end(), 0,
                         [](int acc, const Root& r) { return acc + r.multiplicity; });
}

std::vector<std::complex<double>> RootSet::flattened() const {
  std::vector<std::complex<double>> out;
  for (const Root& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
  return out;
}

RootSet roots(const ComplexPoly& p, const RootOptions& options) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero polynomial has no finite root set");
  const ComplexPoly trimmed = p.trimmed(options.deg_tol);
  const Eigen::Index degree = trimmed.size() - 1;
  if (degree == 0) throw Error(ErrorCode::DegreeZero, "constant polynomials have no roots");

  // Exact zeros at the origin are split off before the eigenvalue solve.
  Eigen::Index zeros_at_origin = 0;
  while (trimmed.coeffs()[zeros_at_origin] == Complex(0.0)) ++zeros_at_origin;

  std::vector<Complex> estimates;
  if (zeros_at_origin < degree) {
    const Complex lead = trimmed.coeffs()[degree];
    ComplexPoly monic(Eigen::VectorXcd(trimmed.coeffs().segment(zeros_at_origin, degree - zeros_at_origin + 1) / lead));
    estimates = companion_eigenvalues(monic);

    const ComplexPoly dp = derivative(trimmed);
    for (Complex& r : estimates) {
      const Complex value = trimmed(r);
      const Complex slope = dp(r);
      if (slope == Complex(0.0)) continue;
      const Complex polished = r - value / slope;
      if (std::isfinite(polished.real()) && std::isfinite(polished.imag()) &&
          std::abs(trimmed(polished)) <= std::abs(value)) {
        r = polished;
      }
    }
  }
  std::sort(estimates.begin(), estimates.end(), root_less);

  // Single-linkage clustering of nearby roots into multiplicities.
  std::vector<std::size_t> parent(estimates.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    for (std::size_t j = i + 1; j < estimates.size(); ++j) {
      const double scale = std::max({1.0, std::abs(estimates[i]), std::abs(estimates[j])});
      if (std::abs(estimates[i] - estimates[j]) <= options.cluster_tol * scale) {
        parent[find_root(parent, j)] = find_root(parent, i);
      }
    }
  }

  RootSet out;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (find_root(parent, i) != i) continue;
    Complex sum = 0.0;
    int count = 0;
    for (std::size_t j = 0; j < estimates.size(); ++j) {
      if (find_root(parent, j) == i) {
        sum += estimates[j];
        ++count;
      }
    }
    out.roots.push_back({sum / static_cast<double>(count), count});
  }
  if (zeros_at_origin > 0) out.roots.push_back({Complex(0.0), static_cast<int>(zeros_at_origin)});
  std::sort(out.roots.begin(), out.roots.end(),
            [](const Root& a, const Root& b) { return root_less(a.value, b.value); });

  const double lead = std::abs(trimmed.coeffs()[degree]);
  const double loose = std::sqrt(std::numeric_limits<double>::epsilon());
  for (const Root& r : out.roots) {
    const double residual = std::abs(trimmed(r.value)) / lead;
    const double bound = loose * trimmed.abs_eval(std::abs(r.value)) / lead;
    out.residual = std::max(out.residual, residual);
    out.residual_bound = std::max(out.residual_bound, bound);
    if (!(residual <= bound)) {
      std::ostringstream msg;
      msg << "root " << r.value << " has residual " << residual << " above bound " << bound
          << " (degree " << degree << ")";
      throw Error(ErrorCode::NonConvergence, msg.str());
    }
  }
  return out;
}

}  // namespace stabil
