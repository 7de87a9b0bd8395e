#include "stabil/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace stabil {

namespace {

using Complex = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double rounding(const CharFnTruncation& f, Complex z, Complex w) {
  double degree = 0.0;
  for (const ComplexPoly& p : f.coeff_polys) degree = std::max(degree, static_cast<double>(p.size()));
  return 8.0 * (f.T + degree + 2.0) * kEps * f.abs_sum(z, w);
}

}  // namespace

Complex CharFnTruncation::operator()(Complex z, Complex w) const {
  Complex sum = 0.0;
  Complex factor = 1.0;
  for (int n = 0; n <= T; ++n) {
    sum += coeff_polys[static_cast<std::size_t>(n)](z) * factor;
    factor *= w / static_cast<double>(n + 1);
  }
  return sum;
}

double CharFnTruncation::abs_sum(Complex z, Complex w) const {
  double sum = 0.0;
  double factor = 1.0;
  for (int n = 0; n <= T; ++n) {
    sum += coeff_polys[static_cast<std::size_t>(n)].abs_eval(std::abs(z)) * factor;
    factor *= std::abs(w) / static_cast<double>(n + 1);
  }
  return sum;
}

CharFnTruncation char_fn(const OperatorTruncation& a, int k, int t) {
  if (k < 1 || t < 0) throw Error(ErrorCode::InvalidArgument, "char_fn needs k >= 1 and T >= 0");
  if (a.source_degree() < k * t) {
    throw Error(ErrorCode::TruncationTooDeep, "F_" + std::to_string(k) + " to order " + std::to_string(t) +
                                                  " needs N >= " + std::to_string(k * t) + ", have " +
                                                  std::to_string(a.source_degree()));
  }
  CharFnTruncation out{k, t, {}};
  for (int n = 0; n <= t; ++n) out.coeff_polys.push_back(a.column(k * n));
  return out;
}

double tail_bound(Complex psi0_z, Complex w, int t) {
  const double r = std::abs(w);
  if (r == 0.0) return 0.0;
  const double log_term = (t + 1) * std::log(r) + r - std::lgamma(t + 2.0);
  return 3.0 * std::abs(psi0_z) * std::exp(log_term);
}

ZeroProbeReport zero_independence_probe(const CharFnTruncation& f, Complex w0, std::span<const Complex> zgrid) {
  if (zgrid.empty()) throw Error(ErrorCode::InvalidArgument, "zero probe needs a nonempty grid");
  ZeroProbeReport out;
  out.min_abs = std::numeric_limits<double>::infinity();
  for (const Complex& z : zgrid) {
    const double value = std::abs(f(z, w0));
    if (value < out.min_abs) {
      out.min_abs = value;
      out.argmin = z;
    }
    out.max_abs = std::max(out.max_abs, value);
    const double bound = tail_bound(f.coeff_polys.front()(z), w0, f.T) + rounding(f, z, w0);
    out.error_bound = std::max(out.error_bound, bound);
  }
  return out;
}

F2ScanReport f2_zero_scan(const OperatorTruncation& a, int t, std::span<const Complex> zgrid,
                          std::span<const Complex> wgrid) {
  const CharFnTruncation f2 = char_fn(a, 2, t);
  F2ScanReport out;
  out.min_abs = std::numeric_limits<double>::infinity();
  for (const Complex& z : zgrid) {
    const Complex psi0 = f2.coeff_polys.front()(z);
    for (const Complex& w : wgrid) {
      const double value = std::abs(f2(z, w));
      const double bound = tail_bound(psi0, w, t) + rounding(f2, z, w);
      out.max_bound = std::max(out.max_bound, bound);
      if (!(value > bound)) out.separated = false;
      if (value < out.min_abs) {
        out.min_abs = value;
        out.argmin_z = z;
        out.argmin_w = w;
        out.bound_at_min = bound;
      }
    }
  }
  return out;
}

}  // namespace stabil
