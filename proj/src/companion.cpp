#include "stabil/companion.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stabil/charfn.hpp"

namespace stabil {

namespace {

using Complex = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

CompanionData::CompanionData(std::vector<ComplexPoly> moments, int t) : moments_(std::move(moments)), t_(t) {
  if (t < 0 || static_cast<int>(moments_.size()) < std::max(2, 2 * t + 1)) {
    throw Error(ErrorCode::TruncationTooDeep, "companion data needs psi_0 .. psi_{2T} and psi_1");
  }
  if (moments_[0].is_zero()) throw Error(ErrorCode::Psi0Zero, "psi_0 is the zero polynomial");
}

Complex CompanionData::beta(Complex z) const {
  const Complex p0 = psi0()(z);
  if (p0 == Complex(0.0)) throw Error(ErrorCode::Psi0Zero, "psi_0 vanishes at the evaluation point");
  return psi1()(z) / p0;
}

std::vector<Complex> CompanionData::c(Complex z) const {
  const Complex p0 = psi0()(z);
  const Complex b = beta(z);
  const int top = 2 * t_;
  std::vector<Complex> ratio(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) ratio[static_cast<std::size_t>(n)] = moments_[static_cast<std::size_t>(n)](z) / p0 / factorial(n);
  std::vector<Complex> out(ratio.size());
  for (int n = 0; n <= top; ++n) {
    Complex sum = 0.0;
    Complex term = 1.0;  // (-beta)^j / j!
    for (int j = 0; j <= n; ++j) {
      sum += ratio[static_cast<std::size_t>(n - j)] * term;
      term *= -b / static_cast<double>(j + 1);
    }
    out[static_cast<std::size_t>(n)] = sum;
  }
  return out;
}

std::vector<Complex> CompanionData::g_coeffs(Complex z) const {
  const std::vector<Complex> cn = c(z);
  const Complex two_beta = 2.0 * beta(z);
  std::vector<Complex> out(static_cast<std::size_t>(t_) + 1);
  for (int n = 0; n <= t_; ++n) {
    Complex sum = 0.0;
    Complex power = 1.0;
    double binom = 1.0;
    for (int j = 0; j <= n; ++j) {
      sum += cn[static_cast<std::size_t>(2 * n - j)] * factorial(2 * n - j) * binom * power;
      power *= two_beta;
      binom = binom * (n - j) / (j + 1);
    }
    out[static_cast<std::size_t>(n)] = sum;
  }
  return out;
}

Complex CompanionData::g_series(Complex z, Complex w) const {
  const std::vector<Complex> g = g_coeffs(z);
  Complex sum = 0.0;
  Complex factor = 1.0;
  for (int n = 0; n <= t_; ++n) {
    sum += g[static_cast<std::size_t>(n)] * factor;
    factor *= w / static_cast<double>(n + 1);
  }
  return sum;
}

Complex CompanionData::g_general(Complex z, Complex w) const {
  const std::vector<Complex> cn = c(z);
  const Complex two_beta = 2.0 * beta(z);
  Complex sum = 0.0;
  for (int m = 0; m <= t_; ++m) {
    for (int n = 0; m + n <= t_; ++n) {
      sum += cn[static_cast<std::size_t>(m + 2 * n)] * (factorial(m + 2 * n) / (factorial(m) * factorial(n))) *
             std::pow(two_beta, m) * std::pow(w, m + n);
    }
  }
  return sum;
}

Complex CompanionData::g_beta(Complex z, Complex w) const {
  const std::vector<Complex> cn = c(z);
  const Complex b = beta(z);
  Complex sum = 0.0;
  Complex beta_term = 1.0;  // beta^m / m!
  Complex two_w = 1.0;      // (2w)^m
  for (int m = 0; m <= t_; ++m) {
    Complex inner = 0.0;
    Complex w_term = 1.0;  // w^n / n!
    for (int n = 0; m + n <= t_; ++n) {
      inner += cn[static_cast<std::size_t>(m + 2 * n)] * factorial(m + 2 * n) * w_term;
      w_term *= w / static_cast<double>(n + 1);
    }
    sum += two_w * inner * beta_term;
    two_w *= 2.0 * w;
    beta_term *= b / static_cast<double>(m + 1);
  }
  return sum;
}

Complex CompanionData::g_direct(Complex z, Complex w) const {
  Complex f2 = 0.0;
  Complex factor = 1.0;
  for (int n = 0; n <= t_; ++n) {
    f2 += moments_[static_cast<std::size_t>(2 * n)](z) * factor;
    factor *= w / static_cast<double>(n + 1);
  }
  const Complex b = beta(z);
  return std::exp(-w * b * b) * f2 / psi0()(z);
}

double CompanionData::truncation_bound(Complex z, Complex w) const {
  const Complex p0 = psi0()(z);
  const double a0 = std::abs(p0);
  const Complex b = beta(z);
  const double damp = std::abs(std::exp(-w * b * b));
  const double r = std::abs(z);

  double degree = 0.0;
  double abs_sum = 0.0;
  double factor = 1.0;
  for (int n = 0; n <= t_; ++n) {
    const ComplexPoly& p = moments_[static_cast<std::size_t>(2 * n)];
    degree = std::max(degree, static_cast<double>(p.size()));
    abs_sum += p.abs_eval(r) * factor;
    factor *= std::abs(w) / (n + 1);
  }
  const double unit = 8.0 * (degree + t_ + 2.0) * kEps;
  const double g = damp * abs_sum / a0;
  // Errors of psi_0(z) and beta(z) enter through the quotient and the exponent.
  const double rel_psi0 = unit * psi0().abs_eval(r) / a0;
  const double abs_beta = unit * (psi1().abs_eval(r) + std::abs(b) * psi0().abs_eval(r)) / a0;
  const double exponent_err = 2.0 * std::abs(w) * std::abs(b) * abs_beta + unit * (1.0 + std::abs(w * b * b));
  return damp * (tail_bound(p0, w, t_) + unit * abs_sum) / a0 + g * (rel_psi0 + exponent_err);
}

CompanionData second_companion(const OperatorTruncation& a, int t) {
  if (a.source_degree() < 2 * t || a.source_degree() < 1) {
    throw Error(ErrorCode::TruncationTooDeep, "second companion to order " + std::to_string(t) + " needs N >= " +
                                                  std::to_string(std::max(1, 2 * t)));
  }
  if (rank_estimate(a) < 2) throw Error(ErrorCode::RankTooLow, "second companion needs rank at least 2");
  return CompanionData(moments(a).psi, t);
}

MomentBoundReport moment_bound_check(const OperatorTruncation& a, const Region& omega, std::span<const Complex> grid,
                                     double tol) {
  const MomentSequence m = moments(a);
  const ComplexPoly& psi0 = m.psi[0];
  const double scale0 = psi0.norm();
  std::vector<Complex> points;
  std::vector<Complex> values0;
  for (const Complex& z : grid) {
    if (!inside(omega, z)) continue;
    const Complex v = psi0(z);
    if (std::abs(v) <= 1e3 * kEps * std::max(psi0.abs_eval(std::abs(z)), scale0)) {
      throw Error(ErrorCode::Psi0VanishesOnGrid, "psi_0 vanishes on the grid");
    }
    points.push_back(z);
    values0.push_back(v);
  }

  MomentBoundReport out;
  const Eigen::VectorXcd v0 = a.matrix().col(0);
  const double v0_sq = v0.squaredNorm();
  for (int n = 1; n <= a.source_degree(); ++n) {
    MomentBound mb;
    mb.n = n;
    const Eigen::VectorXcd vn = a.matrix().col(n);
    if (v0_sq > 0.0) {
      const Complex alpha = v0.dot(vn) / v0_sq;
      const double residual = (vn - alpha * v0).norm();
      if (residual <= tol * std::max(vn.norm(), kEps)) {
        mb.proportional = true;
        mb.alpha = alpha;
      }
    }
    if (mb.proportional) {
      mb.bound = 3.0;
      mb.max_ratio = std::abs(mb.alpha);
    } else {
      mb.bound = 1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        mb.max_ratio = std::max(mb.max_ratio, std::abs(m.psi[static_cast<std::size_t>(n)](points[i]) / values0[i]));
      }
    }
    mb.passed = mb.max_ratio < mb.bound;
    out.passed = out.passed && mb.passed;
    out.moments.push_back(mb);
  }
  return out;
}

}  // namespace stabil
