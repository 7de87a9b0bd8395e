#include "stabil/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stabil/random.hpp"

namespace stabil {

namespace {

using Complex = std::complex<double>;

std::vector<Complex> interior_pool(const Region& omega) {
  Region bare = omega;
  bare.boundary_band = 0.0;
  std::vector<Complex> pool;
  for (const Complex& z : grid_points(bare, 24)) {
    if (membership(omega, z) == Membership::Inside) pool.push_back(z);
  }
  if (pool.empty()) pool.push_back(interior_point(omega).first);
  return pool;
}

void check_preconditions(const Region& omega1, const Region& omega2) {
  if (!bounded(omega1)) {
    throw Error(ErrorCode::PreconditionViolated, "omega1 must be bounded, got " + std::string(kind(omega1)));
  }
  if (!interior_nonempty(omega2)) {
    throw Error(ErrorCode::PreconditionViolated, "omega2 must have nonempty interior");
  }
}

}  // namespace

double cross_residual(const ComplexPoly& psi0, const ComplexPoly& psi1, const ComplexPoly& psin, int n) {
  const Complex s = 1.0 / psi0.norm1();
  const ComplexPoly a = psi0 * s;
  const ComplexPoly b = psi1 * s;
  const ComplexPoly c = psin * s;
  const double diff = (multiply(pow(a, n - 1), c) - pow(b, n)).norm1();
  const double scale = std::pow(a.norm1(), n - 1) * c.norm1() + std::pow(b.norm1(), n);
  return scale > 0.0 ? diff / scale : 0.0;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Rank1: return "Rank1";
    case Verdict::ProductComposition: return "ProductComposition";
    case Verdict::NotPreserving: return "NotPreserving";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

std::optional<Witness> check_candidate(const OperatorTruncation& a, const Region& omega1, const Region& omega2,
                                       const ComplexPoly& p) {
  if (p.is_zero() || p.degree() > a.source_degree()) return std::nullopt;
  if (is_stable(p, omega1).status != Stability::Stable) return std::nullopt;
  const ComplexPoly image = apply(a, p);
  if (image.is_zero() || negligible_image(a, p, image)) return std::nullopt;
  const StabilityResult s = is_stable(image, omega2);
  if (!s.confidently_unstable(omega2)) return std::nullopt;
  return Witness{p, image, *s.witness};
}

std::optional<Witness> falsify(const OperatorTruncation& a, const Region& omega1, const Region& omega2, int budget,
                               std::uint64_t seed) {
  check_preconditions(omega1, omega2);
  const int n = a.source_degree();
  const std::vector<Complex> pool = interior_pool(omega2);
  const ComplexPoly z = ComplexPoly{Complex(0.0), Complex(1.0)};
  for (int i = 0; i < budget; ++i) {
    const int degree = n == 0 ? 0 : 1 + (i % n);
    const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(i));
    ComplexPoly p;
    try {
      if (i % 2 == 0 || degree == 0) {
        p = random_stable_poly(omega1, degree, s);
      } else {
        // Choose the last root t so that A(p) vanishes at an interior point zeta.
        const ComplexPoly q = random_stable_poly(omega1, degree - 1, s);
        Rng rng(mix_seed(s, 1));
        const Complex zeta = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        const Complex den = apply(a, q)(zeta);
        if (den == Complex(0.0)) continue;
        const Complex t = apply(a, multiply(z, q))(zeta) / den;
        if (membership(omega1, t) != Membership::Outside) continue;
        p = multiply(q, ComplexPoly{-t, Complex(1.0)});
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SamplerExhausted) continue;
      throw;
    }
    if (auto w = check_candidate(a, omega1, omega2, p)) return w;
  }
  return std::nullopt;
}

Classification classify(const OperatorTruncation& a, const Region& omega1, const Region& omega2,
                        const ClassifyOptions& options) {
  check_preconditions(omega1, omega2);
  Classification out;
  out.rank = rank_estimate(a);

  auto refute = [&](std::string step, std::optional<Witness> targeted) {
    out.report = std::move(step);
    if (!targeted) targeted = falsify(a, omega1, omega2, options.budget, options.seed);
    if (targeted) {
      out.verdict = Verdict::NotPreserving;
      out.witness = std::move(targeted);
    } else {
      out.verdict = Verdict::Inconclusive;
      out.report += "; no witness within budget " + std::to_string(options.budget);
    }
    return out;
  };

  const Eigen::MatrixXcd& m = a.matrix();
  if (out.rank <= 1) {
    Eigen::Index k = 0;
    const double largest = m.colwise().norm().maxCoeff(&k);
    out.nu.assign(static_cast<std::size_t>(m.cols()), Complex(0.0));
    if (largest == 0.0) {
      out.verdict = Verdict::Rank1;
      out.psi = ComplexPoly::constant(0.0);
      out.report = "zero operator";
      return out;
    }
    const Eigen::VectorXcd base = m.col(k);
    for (Eigen::Index n = 0; n < m.cols(); ++n) out.nu[static_cast<std::size_t>(n)] = base.dot(m.col(n)) / base.squaredNorm();
    out.psi = compact(a.column(static_cast<int>(k)));
    const StabilityResult s = is_stable(out.psi, omega2);
    if (s.status == Stability::Stable) {
      out.verdict = Verdict::Rank1;
      return out;
    }
    std::optional<Witness> targeted;
    if (s.status == Stability::Unstable) {
      targeted = check_candidate(a, omega1, omega2, ComplexPoly::constant(1.0));
    }
    return refute(std::string("rank-1 image direction psi is ") + std::string(to_string(s.status)) + " in omega2",
                  targeted);
  }

  const MomentSequence mom = moments(a);
  const ComplexPoly& psi0 = mom.psi[0];
  if (psi0.is_zero()) return refute("psi_0 = A(1) is zero at rank >= 2", std::nullopt);
  const StabilityResult s0 = is_stable(psi0, omega2);
  if (s0.status != Stability::Stable) {
    std::optional<Witness> targeted;
    if (s0.status == Stability::Unstable) targeted = check_candidate(a, omega1, omega2, ComplexPoly::constant(1.0));
    return refute(std::string("psi_0 is ") + std::string(to_string(s0.status)) + " in omega2", targeted);
  }

  const std::optional<ComplexPoly> phi = divide_exact(mom.psi[1], psi0, options.tol);
  if (!phi) return refute("psi_1 / psi_0 is not a polynomial", std::nullopt);
  if (phi->degree() < 1) return refute("phi = psi_1 / psi_0 is constant", std::nullopt);

  for (int n = 2; n <= a.source_degree(); ++n) {
    out.residuals.push_back(cross_residual(psi0, mom.psi[1], mom.psi[static_cast<std::size_t>(n)], n));
  }
  for (std::size_t i = 0; i < out.residuals.size(); ++i) {
    if (out.residuals[i] > options.tol) {
      std::ostringstream step;
      step << "cross relation psi_0^{n-1} psi_n = psi_1^n fails at n = " << i + 2 << " (residual "
           << out.residuals[i] << ")";
      return refute(step.str(), std::nullopt);
    }
  }

  const MapResult map = maps_into(*phi, omega2, omega1, options.grid);
  out.map_verdict = map.verdict;
  if (map.verdict == MapVerdict::Refuted) {
    const Complex target = (*phi)(*map.witness);
    const std::optional<Witness> targeted =
        check_candidate(a, omega1, omega2, ComplexPoly{-target, Complex(1.0)});
    return refute("phi does not map omega2 into omega1", targeted);
  }
  out.verdict = Verdict::ProductComposition;
  out.psi = psi0.trimmed();
  out.phi = phi->trimmed();
  out.report = map.verdict == MapVerdict::Certified ? "phi(omega2) in omega1 certified"
                                                    : "phi(omega2) in omega1 sampled only";
  return out;
}

bool bb_certificate(const OperatorTruncation& a, int samples, std::uint64_t seed) {
  const Region disk = Region::unit_disk(false, 1e-9);
  Rng rng(mix_seed(seed, 0xbb));
  for (int s = 0; s < samples; ++s) {
    const Complex w = uniform_in_disk(rng, 0.0, 1.0);
    const ComplexPoly factor{Complex(1.0), w};
    ComplexPoly f = ComplexPoly::constant(1.0);
    for (int n = 0; n <= a.source_degree(); ++n) {
      const ComplexPoly image = apply(a, f);
      if (!image.is_zero() && !negligible_image(a, f, image) && is_stable(image, disk).confidently_unstable(disk)) {
        return false;
      }
      f = multiply(f, factor);
    }
  }
  return true;
}

Reduction reduce_general(const OperatorTruncation& a, const Region& omega1, const Region& omega2) {
  check_preconditions(omega1, omega2);
  Reduction out;
  out.delta = 0.5 / sup_abs(omega1);
  const auto [z2, d] = interior_point(omega2);
  out.epsilon = std::min(1.0, 0.5 / (std::abs(z2) + d / 2.0));
  out.omega = Region::disk(out.epsilon * z2, out.epsilon * d / 2.0);
  const OperatorTruncation inner = compose_operators(a, make_dilation(out.delta, a.source_degree()));
  out.a_tilde = compose_operators(make_dilation(1.0 / out.epsilon, inner.target_degree()), inner);
  return out;
}

}  // namespace stabil
