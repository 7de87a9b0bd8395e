#include "stabil/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stabil/overloaded.hpp"
#include "stabil/random.hpp"

namespace stabil {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Relative tolerance on the certified modulus; the Taylor pad between
// boundary samples is held well below it.
constexpr double kCertSlack = 1e-8;
constexpr double kPadRelative = 1e-10;

struct Circle {
  Complex center;
  double radius;
};

struct CircleEnclosure {
  double upper_sq;
  double lower_sq;
  int samples;
};

// Encloses f = |q|^2 on |u| = rho. With theta the angle, f' = 2 Re(conj(Q) Q')
// and |f''| <= 2 B1^2 + 2 B0 B2, where B_j = sum k^j |a_k| rho^k, so between
// samples f stays within |f'_i| h/2 + K h^2/8 of the nearest sample value.
CircleEnclosure enclose_on_circle(const ComplexPoly& q, double rho) {
  const ComplexPoly dq = derivative(q);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  double power = 1.0;
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    const double term = std::abs(q.coeffs()[k]) * power;
    b0 += term;
    b1 += static_cast<double>(k) * term;
    b2 += static_cast<double>(k * k) * term;
    power *= rho;
  }
  const double curvature = 2.0 * b1 * b1 + 2.0 * b0 * b2;
  int m = 4096;
  if (curvature > 0.0 && b0 > 0.0) {
    const double h_target = std::sqrt(8.0 * kPadRelative * b0 * b0 / curvature);
    const double wanted = std::ceil(2.0 * std::numbers::pi / h_target);
    m = static_cast<int>(std::clamp(wanted, 4096.0, double(1 << 18)));
  }
  const double h = 2.0 * std::numbers::pi / m;
  const double rounding = 8.0 * static_cast<double>(q.size() + 2) * kEps * b0 * b0;
  const double pad2 = curvature * h * h / 8.0 + rounding;

  double upper = 0.0;
  double lower = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const Complex u = std::polar(rho, h * i);
    const Complex value = q(u);
    const Complex slope = Complex(0.0, 1.0) * u * dq(u);
    const double f = std::norm(value);
    const double df = 2.0 * std::abs((std::conj(value) * slope).real());
    upper = std::max(upper, f + df * h / 2.0 + pad2);
    lower = std::min(lower, f - df * h / 2.0 - pad2);
  }
  return {upper, lower, m};
}

std::vector<Circle> boundary_circles(const Region& omega) {
  return std::visit(Overloaded{
                        [](const Disk& d) { return std::vector<Circle>{{d.center, d.radius}}; },
                        [](const Annulus& a) {
                          std::vector<Circle> out;
                          if (a.r_inner > 0.0) out.push_back({a.center, a.r_inner});
                          out.push_back({a.center, a.r_outer});
                          return out;
                        },
                        [](const PuncturedDisk& d) { return std::vector<Circle>{{d.center, d.radius}}; },
                        [](const ConvexComplement&) { return std::vector<Circle>{}; },
                        [](const Sampled&) { return std::vector<Circle>{}; },
                    },
                    omega.shape);
}

bool disk_like(const Region& omega) {
  return std::holds_alternative<Disk>(omega.shape) || std::holds_alternative<Annulus>(omega.shape) ||
         std::holds_alternative<PuncturedDisk>(omega.shape);
}

// Points of the source used for refutation: lattice plus rings hugging each
// boundary from the inside (or on it when that boundary is closed).
std::vector<Complex> probe_points(const Region& source, int g) {
  Region bare = source;
  bare.boundary_band = 0.0;
  std::vector<Complex> pts = grid_points(bare, g);
  const int ring = std::max(4 * g, 256);
  auto add_ring = [&](Complex c, double r) {
    for (int i = 0; i < ring; ++i) {
      const Complex z = c + std::polar(r, 2.0 * std::numbers::pi * (i + 0.5) / ring);
      if (inside(bare, z)) pts.push_back(z);
    }
  };
  std::visit(Overloaded{
                 [&](const Disk& d) { add_ring(d.center, d.closed ? d.radius : d.radius * (1.0 - 1e-12)); },
                 [&](const Annulus& a) {
                   if (a.r_inner > 0.0) add_ring(a.center, a.closed_inner ? a.r_inner : a.r_inner * (1.0 + 1e-12));
                   add_ring(a.center, a.closed_outer ? a.r_outer : a.r_outer * (1.0 - 1e-12));
                 },
                 [&](const PuncturedDisk& d) {
                   add_ring(d.center, d.closed ? d.radius : d.radius * (1.0 - 1e-12));
                   add_ring(d.center, 1e-6 * d.radius);
                 },
                 [&](const ConvexComplement& c) {
                   const auto [center, half] = sampling_box(bare);
                   add_ring(center, 2.0 * half);
                   add_ring(center, 10.0 * (half + std::abs(center)) + 10.0);
                   if (const auto* k = std::get_if<DiskSet>(&c.hull)) add_ring(k->center, k->radius * (1.0 + 1e-12));
                 },
                 [&](const Sampled& s) {
                   for (const Complex& p : s.points) add_ring(p, s.radius * (1.0 - 1e-12));
                 },
             },
             source.shape);
  return pts;
}

// Zeros of q strictly away from the closed filled source (the punctured disk
// counts its center), so the minimum modulus sits on the boundary circles.
bool zero_free_on_closure(const ComplexPoly& q, const Region& source) {
  if (q.degree() < 1) return !q.is_zero();
  const RootSet rs = roots(q);
  for (const Root& root : rs.roots) {
    const bool ok = std::visit(Overloaded{
                                   [&](const Disk& d) { return std::abs(root.value - d.center) > d.radius * (1.0 + 1e-9); },
                                   [&](const PuncturedDisk& d) {
                                     return std::abs(root.value - d.center) > d.radius * (1.0 + 1e-9);
                                   },
                                   [&](const Annulus& a) {
                                     const double r = std::abs(root.value - a.center);
                                     return r < a.r_inner * (1.0 - 1e-9) || r > a.r_outer * (1.0 + 1e-9);
                                   },
                                   [](const auto&) { return false; },
                               },
                               source.shape);
    if (!ok) return false;
  }
  return true;
}

void certify(const ComplexPoly& phi, const Region& source, const Region& target, MapResult& out) {
  Complex ct;
  double r_out = 0.0;
  double r_in = 0.0;
  bool need_lower = false;
  std::visit(Overloaded{
                 [&](const Disk& d) {
                   ct = d.center;
                   r_out = d.radius;
                 },
                 [&](const Annulus& a) {
                   ct = a.center;
                   r_out = a.r_outer;
                   r_in = a.r_inner;
                   need_lower = a.r_inner > 0.0 || !a.closed_inner;
                 },
                 [&](const PuncturedDisk& d) {
                   ct = d.center;
                   r_out = d.radius;
                   need_lower = true;
                 },
                 [](const auto&) {},
             },
             target.shape);
  const double band = target.boundary_band;

  double upper = 0.0;
  double lower = std::numeric_limits<double>::infinity();
  for (const Circle& c : boundary_circles(source)) {
    // phi(c + u) - ct as a polynomial in u.
    const ComplexPoly shifted = compose(phi, ComplexPoly{c.center, Complex(1.0)}) - ComplexPoly::constant(ct);
    const CircleEnclosure e = enclose_on_circle(shifted, c.radius);
    upper = std::max(upper, e.upper_sq);
    lower = std::min(lower, e.lower_sq);
    out.samples += e.samples;
  }
  out.upper = std::sqrt(upper);
  if (*out.upper > r_out * (1.0 + kCertSlack) + band) return;
  if (need_lower) {
    if (!zero_free_on_closure(phi - ComplexPoly::constant(ct), source)) return;
    out.lower = std::sqrt(std::max(0.0, lower));
    if (r_in > 0.0 && *out.lower < r_in * (1.0 - kCertSlack) - band) return;
  }
  out.verdict = MapVerdict::Certified;
}

}  // namespace

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::Borderline: return "Borderline";
    case Stability::ZeroPoly: return "ZeroPoly";
  }
  return "Unknown";
}

std::string_view to_string(MapVerdict v) {
  switch (v) {
    case MapVerdict::Certified: return "Certified";
    case MapVerdict::Refuted: return "Refuted";
    case MapVerdict::SampledOnly: return "SampledOnly";
  }
  return "Unknown";
}

double root_uncertainty(const ComplexPoly& p, const RootSet& rs, Complex r) {
  const ComplexPoly q = p.trimmed();
  double denom = std::abs(q.coeffs()[q.size() - 1]);
  for (const Root& other : rs.roots) {
    if (other.value == r) {
      if (other.multiplicity > 1) return std::numeric_limits<double>::infinity();
      continue;
    }
    denom *= std::pow(std::abs(r - other.value), other.multiplicity);
  }
  const double noise = std::abs(q(r)) + 4.0 * static_cast<double>(q.size()) * kEps * q.abs_eval(std::abs(r));
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return static_cast<double>(q.size() - 1) * noise / denom;
}

bool StabilityResult::confidently_unstable(const Region& omega) const {
  return status == Stability::Unstable && witness && witness_uncertainty < boundary_distance(omega, *witness);
}

StabilityResult is_stable(const ComplexPoly& p, const Region& omega, const RootOptions& options) {
  StabilityResult out;
  if (p.is_zero()) {
    out.status = Stability::ZeroPoly;
    return out;
  }
  if (p.degree(options.deg_tol) < 1) return out;
  out.roots = roots(p, options);
  std::optional<Complex> band_root;
  for (const Root& r : out.roots.roots) {
    const Membership m = membership(omega, r.value);
    if (m == Membership::Inside) {
      out.status = Stability::Unstable;
      out.witness = r.value;
      out.witness_uncertainty = root_uncertainty(p, out.roots, r.value);
      return out;
    }
    if (m == Membership::Band && !band_root) band_root = r.value;
  }
  if (band_root) {
    out.status = Stability::Borderline;
    out.witness = band_root;
  }
  return out;
}

ComplexPoly random_stable_poly(const Region& omega, int degree, std::uint64_t seed, const SamplerOptions& options) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
  Rng rng(mix_seed(seed, 0x5ab1e));
  const Complex lead = uniform(rng, 0.5, 2.0) * unit_phase(rng);
  if (degree == 0) return ComplexPoly::constant(lead);

  const auto [center, half] = sampling_box(omega);
  const double diam = std::max(2.0 * half, 1.0);
  const double margin = 2.0 * omega.boundary_band + 1e-6 * diam;

  auto candidate = [&, center = center](int attempt) -> Complex {
    if (const auto* c = std::get_if<ConvexComplement>(&omega.shape)) {
      return std::visit(Overloaded{
                            [&](const DiskSet& k) { return uniform_in_disk(rng, k.center, k.radius); },
                            [&](const HalfPlane& h) {
                              const double s = 2.0 * std::max(1.0, std::abs(h.offset));
                              const double depth = uniform(rng, 0.0, s);
                              const double across = uniform(rng, -s, s);
                              return h.normal * Complex(h.offset - depth, across);
                            },
                            [&](const PolygonHull&) { return uniform_in_box(rng, center, half); },
                        },
                        c->hull);
    }
    if (attempt % 2 == 0) return uniform_in_box(rng, center, 2.0 * diam);
    return uniform_in_ring(rng, center, 2.0 * diam, 4.0 * diam);
  };

  std::vector<Complex> zeros;
  zeros.reserve(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) {
    bool found = false;
    for (int attempt = 0; attempt < options.budget_per_root; ++attempt) {
      const Complex z = candidate(attempt);
      if (membership(omega, z) == Membership::Outside && boundary_distance(omega, z) >= margin) {
        zeros.push_back(z);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::SamplerExhausted,
                  "no admissible root in the complement of a " + std::string(kind(omega)) + " region after " +
                      std::to_string(options.budget_per_root) + " draws");
    }
  }
  return ComplexPoly::from_roots(zeros, lead);
}

MapResult maps_into(const ComplexPoly& phi, const Region& source, const Region& target, int grid_density) {
  MapResult out;
  const ComplexPoly f = phi.trimmed();
  if (f.degree() < 1) {
    const Complex value = f.coeff(0);
    const Membership m = membership(target, value);
    out.samples = 1;
    if (m == Membership::Inside) {
      out.verdict = MapVerdict::Certified;
      out.upper = out.lower = 0.0;
    } else if (m == Membership::Outside && interior_nonempty(source)) {
      out.verdict = MapVerdict::Refuted;
      out.witness = interior_point(source).first;
    }
    return out;
  }

  for (const Complex& z : probe_points(source, grid_density)) {
    ++out.samples;
    // A value within rounding of the target boundary does not refute.
    const Complex value = f(z);
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * f.abs_eval(std::abs(z));
    if (membership(target, value) == Membership::Outside && boundary_distance(target, value) > rounding) {
      out.verdict = MapVerdict::Refuted;
      out.witness = z;
      return out;
    }
  }
  if (disk_like(source) && disk_like(target)) certify(f, source, target, out);
  return out;
}

}  // namespace stabil
