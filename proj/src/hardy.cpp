#include "stabil/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stabil/random.hpp"
#include "stabil/stability.hpp"

namespace stabil {

namespace {

using Complex = std::complex<double>;

double mean_log_abs(const ComplexPoly& f, double radius, int k) {
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += std::log(std::abs(f(std::polar(radius, 2.0 * std::numbers::pi * i / k))));
  return sum / k;
}

// Drops the leading run of coefficients below rel * |a|.
std::pair<int, ComplexPoly> strip_leading(const ComplexPoly& f, double rel) {
  const double cut = rel * f.norm();
  Eigen::Index n = 0;
  while (n < f.size() - 1 && std::abs(f.coeffs()[n]) <= cut) ++n;
  return {static_cast<int>(n), ComplexPoly(Eigen::VectorXcd(f.coeffs().tail(f.size() - n)))};
}

bool admissible(const ComplexPoly& f, H2Mode mode) {
  if (f.is_zero()) return false;
  const ComplexPoly g = mode == H2Mode::Shifted ? strip_leading(f, 1e-12).second : f;
  return root_outer_test(g).verdict == OuterVerdict::Outer;
}

// The image of an admissible input leaves the class: it is zero or has a
// root confidently inside the open disk (away from the origin in shifted mode).
std::optional<Witness> h2_candidate(const OperatorTruncation& a, const ComplexPoly& f, H2Mode mode) {
  if (f.degree() > a.source_degree() || !admissible(f, mode)) return std::nullopt;
  const ComplexPoly image = apply(a, f);
  if (image.is_zero() || negligible_image(a, f, image)) return Witness{f, image, Complex(0.0)};
  const ComplexPoly g = mode == H2Mode::Shifted ? strip_leading(image, 1e-12).second : image;
  const Region disk = Region::unit_disk(false, 1e-9);
  const StabilityResult s = is_stable(g, disk);
  if (!s.confidently_unstable(disk)) return std::nullopt;
  return Witness{f, image, *s.witness};
}

std::optional<Witness> h2_falsify(const OperatorTruncation& a, H2Mode mode, int budget, std::uint64_t seed) {
  const int n = a.source_degree();
  const Region closed_disk = Region::unit_disk(true);
  const std::vector<Complex> pool = grid_points(Region::disk(0.0, 0.95), 16);
  const ComplexPoly z{Complex(0.0), Complex(1.0)};
  for (int i = 0; i < budget; ++i) {
    const int degree = 1 + (i % n);
    const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(mix_seed(s, 2));
    const int shift = mode == H2Mode::Shifted ? std::uniform_int_distribution<int>(0, degree - 1)(rng) : 0;
    ComplexPoly f;
    if (i % 2 == 0) {
      f = random_stable_poly(closed_disk, degree - shift, s);
    } else {
      const ComplexPoly q = random_stable_poly(closed_disk, degree - shift - 1, s);
      const Complex zeta = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      const ComplexPoly qs = multiply(pow(z, shift), q);
      const Complex den = apply(a, qs)(zeta);
      if (den == Complex(0.0)) continue;
      const Complex t = apply(a, multiply(z, qs))(zeta) / den;
      if (!(std::abs(t) > 1.0 + 1e-9)) continue;
      f = multiply(q, ComplexPoly{-t, Complex(1.0)});
    }
    f = multiply(pow(z, shift), f);
    if (auto w = h2_candidate(a, f, mode)) return w;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(OuterVerdict v) {
  switch (v) {
    case OuterVerdict::Outer: return "Outer";
    case OuterVerdict::NotOuter: return "NotOuter";
    case OuterVerdict::Borderline: return "Borderline";
  }
  return "Unknown";
}

std::string_view to_string(H2Mode m) { return m == H2Mode::Outer ? "outer" : "shifted"; }

JensenReport jensen_outer_test(const H2Trunc& f, int k, double tol) {
  if (k < 64) throw Error(ErrorCode::InvalidArgument, "Jensen test needs at least 64 circle samples");
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero function is not outer");
  JensenReport out;
  out.samples = k;
  out.tol = tol;
  out.radius = 1.0 - 1.0 / k;
  out.truncation = static_cast<int>(f.size()) - 1;
  const double at_origin = std::abs(f.coeffs()[0]);
  if (at_origin == 0.0) {
    out.deficit = out.deficit_inner = std::numeric_limits<double>::infinity();
    return out;
  }
  out.deficit = mean_log_abs(f, out.radius, k) - std::log(at_origin);
  out.deficit_inner = mean_log_abs(f, 1.0 - 2.0 / k, k) - std::log(at_origin);
  if (out.deficit <= tol) {
    out.verdict = OuterVerdict::Outer;
  } else if (out.deficit <= 10.0 * tol) {
    out.verdict = OuterVerdict::Borderline;
  }
  return out;
}

RootOuterReport root_outer_test(const ComplexPoly& p, double band, bool boundary_is_borderline) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero polynomial is not outer");
  RootOuterReport out;
  out.truncation = static_cast<int>(p.size()) - 1;
  if (p.degree() < 1) return out;
  for (const Root& r : roots(p).roots) {
    const double modulus = std::abs(r.value);
    if (modulus < 1.0 - band) {
      out.verdict = OuterVerdict::NotOuter;
      out.witness = r.value;
      return out;
    }
    if (modulus <= 1.0 + band && !out.boundary_roots) {
      out.boundary_roots = true;
      out.witness = r.value;
    }
  }
  if (out.boundary_roots && boundary_is_borderline) out.verdict = OuterVerdict::Borderline;
  return out;
}

std::optional<ShiftedOuter> shifted_outer_decompose(const H2Trunc& f, double tol, int k) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "the zero function is not shifted outer");
  auto [n, g] = strip_leading(f, tol);
  if (jensen_outer_test(g, k, tol).verdict != OuterVerdict::Outer) return std::nullopt;
  return ShiftedOuter{n, std::move(g)};
}

MinPhaseReport minimum_phase_test(const Signal& s) {
  const bool all_zero =
      std::all_of(s.samples.begin(), s.samples.end(), [](const Complex& x) { return x == Complex(0.0); });
  if (all_zero) throw Error(ErrorCode::ZeroSignal, "the zero signal has no phase");
  const ComplexPoly f(Eigen::Map<const Eigen::VectorXcd>(s.samples.data(), static_cast<Eigen::Index>(s.samples.size())));
  MinPhaseReport out;
  out.roots = root_outer_test(f);
  out.verdict = out.roots.verdict;
  if (auto shifted = shifted_outer_decompose(f)) out.shift = shifted->n;
  return out;
}

std::optional<PointEvaluation> classify_functional(std::span<const Complex> rho, H2Mode mode, double tol) {
  if (rho.empty() || rho[0] == Complex(0.0)) return std::nullopt;
  const Complex sigma = rho[0];
  const Complex z0 = rho.size() > 1 ? rho[1] / sigma : Complex(0.0);
  if (!(std::abs(z0) < 1.0)) return std::nullopt;
  if (mode == H2Mode::Shifted && !(std::abs(z0) > tol)) return std::nullopt;
  Complex power = 1.0;
  for (const Complex& r : rho) {
    if (std::abs(r - sigma * power) > tol * std::abs(sigma)) return std::nullopt;
    power *= z0;
  }
  return PointEvaluation{sigma, z0};
}

H2Classification classify_h2_operator(const OperatorTruncation& a, H2Mode mode, const ClassifyOptions& options) {
  const int n = a.source_degree();
  if (n < 2) {
    throw Error(ErrorCode::TruncationTooShallow, "outer classification needs N >= 2, have " + std::to_string(n));
  }
  H2Classification out;
  out.mode = mode;
  Classification& r = out.result;
  r.rank = rank_estimate(a);
  const ComplexPoly one = ComplexPoly::constant(1.0);
  const ComplexPoly z{Complex(0.0), Complex(1.0)};

  auto refute = [&](std::string step, std::optional<Witness> targeted) {
    r.report = std::move(step);
    if (!targeted) targeted = h2_falsify(a, mode, options.budget, options.seed);
    if (targeted) {
      r.verdict = Verdict::NotPreserving;
      r.witness = std::move(targeted);
    } else {
      r.verdict = Verdict::Inconclusive;
      r.report += "; no witness within budget " + std::to_string(options.budget);
    }
    return out;
  };

  const Eigen::MatrixXcd& m = a.matrix();
  if (r.rank <= 1) {
    Eigen::Index k = 0;
    const double largest = m.colwise().norm().maxCoeff(&k);
    if (largest == 0.0) return refute("zero operator", h2_candidate(a, one, mode));
    const Eigen::VectorXcd base = m.col(k);
    std::vector<Complex> rho(static_cast<std::size_t>(n) + 1);
    for (Eigen::Index j = 0; j <= n; ++j) rho[static_cast<std::size_t>(j)] = base.dot(m.col(j)) / base.squaredNorm();
    ComplexPoly psi = compact(a.column(static_cast<int>(k)));
    const double rho_scale = std::abs(rho[static_cast<std::size_t>(k)]);
    if (std::abs(rho[0]) <= options.tol * rho_scale) return refute("nu(1) = 0", h2_candidate(a, one, mode));
    const Complex rho0 = rho[0];
    psi *= rho0;
    for (Complex& x : rho) x /= rho0;
    r.nu = rho;
    r.psi = psi;
    if (!admissible(psi, mode)) return refute("psi = A(1) / nu(1) is not admissible", h2_candidate(a, one, mode));

    const std::optional<PointEvaluation> pe = classify_functional(rho, mode, options.tol);
    if (pe) {
      r.verdict = Verdict::Rank1;
      r.phi = ComplexPoly::constant(pe->z0);
      r.report = "point evaluation at z0";
      out.point_evaluation = PointEvaluation{pe->sigma, pe->z0};
      return out;
    }
    // nu(z^j - rho_j) = 0 and z^j - rho_j is outer once |rho_j| >= 1.
    std::optional<Witness> targeted;
    for (int j = 1; j <= n && !targeted; ++j) {
      const Complex rj = rho[static_cast<std::size_t>(j)];
      if (std::abs(rj) >= 1.0) targeted = h2_candidate(a, ComplexPoly::monomial(j) - ComplexPoly::constant(rj), mode);
    }
    if (!targeted && mode == H2Mode::Shifted) targeted = h2_candidate(a, z, mode);
    return refute("functional is not a point evaluation of the admissible form", targeted);
  }

  const MomentSequence mom = moments(a);
  const ComplexPoly& psi0 = mom.psi[0];
  if (!admissible(psi0, mode)) {
    return refute(std::string("psi_0 = A(1) is not ") + (mode == H2Mode::Outer ? "outer" : "shifted outer"),
                  h2_candidate(a, one, mode));
  }
  const std::optional<ComplexPoly> phi = divide_exact(mom.psi[1], psi0, options.tol);
  if (!phi) return refute("psi_1 / psi_0 is not a polynomial", std::nullopt);
  if (phi->degree() < 1) return refute("phi = psi_1 / psi_0 is constant", std::nullopt);
  for (int j = 2; j <= n; ++j) {
    r.residuals.push_back(cross_residual(psi0, mom.psi[1], mom.psi[static_cast<std::size_t>(j)], j));
    if (r.residuals.back() > options.tol) {
      return refute("cross relation fails at n = " + std::to_string(j), std::nullopt);
    }
  }
  const Region disk = Region::unit_disk(false, 1e-9);
  const MapResult map = maps_into(*phi, Region::unit_disk(), disk, options.grid);
  r.map_verdict = map.verdict;
  if (map.verdict == MapVerdict::Refuted) {
    const Complex t = (*phi)(*map.witness);
    return refute("phi does not map the disk into itself",
                  h2_candidate(a, ComplexPoly{-t, Complex(1.0)}, mode));
  }
  if (mode == H2Mode::Shifted && !shifted_outer_decompose(*phi, 1e-6)) {
    return refute("phi is not shifted outer", h2_candidate(a, z, mode));
  }
  r.verdict = Verdict::ProductComposition;
  r.psi = psi0.trimmed();
  r.phi = phi->trimmed();
  r.report = map.verdict == MapVerdict::Certified ? "phi(D) in D certified" : "phi(D) in D sampled only";
  return out;
}

ShiftedProductReport shifted_product_check(const H2Trunc& f, const H2Trunc& g, double tol) {
  ShiftedProductReport out;
  out.f_shifted_outer = !f.is_zero() && shifted_outer_decompose(f, tol).has_value();
  out.g_shifted_outer = !g.is_zero() && shifted_outer_decompose(g, tol).has_value();
  const ComplexPoly fg = multiply(f, g);
  out.fg_shifted_outer = !fg.is_zero() && shifted_outer_decompose(fg, tol).has_value();
  out.violation = out.f_shifted_outer && out.fg_shifted_outer && !out.g_shifted_outer;
  return out;
}

}  // namespace stabil
