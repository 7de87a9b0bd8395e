#pragma once

// Generators and independent oracles shared by the unit tests and the
// acceptance binary. Nothing here calls roots() or apply(): root location
// goes through Durand-Kerner iteration (in double, or in 50 digits for
// images rebuilt from their factors) and operator application through a
// plain double loop over the columns.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "stabil/classify.hpp"
#include "stabil/random.hpp"
#include "stabil/region.hpp"
#include "stabil/stability.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

using stabil::Complex;
using stabil::ComplexPoly;
using stabil::Region;
using stabil::Rng;

inline double rel_err(const ComplexPoly& got, const ComplexPoly& want) {
  const Eigen::Index n = std::max(got.size(), want.size());
  double diff = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) diff = std::max(diff, std::abs(got[k] - want[k]));
  return diff / std::max(want.max_abs(), 1e-300);
}

/// sum_n p_n column_n, accumulated coefficient by coefficient.
inline ComplexPoly apply_by_columns(const stabil::OperatorTruncation& a, const ComplexPoly& p) {
  const Eigen::MatrixXcd& m = a.matrix();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m.rows());
  for (Eigen::Index n = 0; n < p.size(); ++n) {
    if (p[n] == Complex(0.0)) continue;
    for (Eigen::Index k = 0; k < m.rows(); ++k) out[k] += p[n] * m(k, n);
  }
  return ComplexPoly(out);
}

/// Code of the stabil::Error thrown by f, or empty when it returns.
template <typename F>
std::optional<stabil::ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const stabil::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Simultaneous Weierstrass iteration from points on a circle; the trimmed
/// degree decides the root count.
inline std::vector<Complex> durand_kerner(const ComplexPoly& p, int iterations = 2000) {
  const ComplexPoly q = p.trimmed();
  const Eigen::Index d = q.size() - 1;
  if (d < 1) return {};
  const Complex lead = q[d];
  double radius = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) radius = std::max(radius, std::pow(std::abs(q[k] / lead), 1.0 / (d - k)));
  radius = 2.0 * radius + 1e-3;
  std::vector<Complex> z(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) z[k] = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.25) / d);
  for (int it = 0; it < iterations; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      Complex den = lead;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      if (den == Complex(0.0)) den = 1e-300;
      const Complex step = q(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (change < 1e-15) break;
  }
  return z;
}

/// No Durand-Kerner root is Inside omega.
inline bool stable_by_oracle(const ComplexPoly& p, const Region& omega) {
  for (const Complex& r : durand_kerner(p)) {
    if (stabil::membership(omega, r) == stabil::Membership::Inside) return false;
  }
  return true;
}

using MpComplex = boost::multiprecision::cpp_complex_50;
using MpPoly = std::vector<MpComplex>;

inline MpPoly to_mp(const ComplexPoly& p) {
  MpPoly out;
  for (Eigen::Index k = 0; k < p.size(); ++k) out.emplace_back(p[k].real(), p[k].imag());
  return out;
}

inline MpPoly mp_multiply(const MpPoly& a, const MpPoly& b) {
  MpPoly out(a.size() + b.size() - 1, MpComplex(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline MpPoly mp_compose(const MpPoly& p, const MpPoly& phi) {
  MpPoly acc{p.back()};
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    acc = mp_multiply(acc, phi);
    acc[0] += p[k];
  }
  return acc;
}

inline MpPoly mp_derivative(const MpPoly& p, int order) {
  MpPoly out = p;
  for (int r = 0; r < order; ++r) {
    if (out.size() <= 1) return MpPoly{MpComplex(0)};
    MpPoly d(out.size() - 1);
    for (std::size_t k = 1; k < out.size(); ++k) d[k - 1] = out[k] * static_cast<int>(k);
    out = std::move(d);
  }
  return out;
}

/// psi * (D^order p) o phi in 50-digit arithmetic from the double inputs.
inline MpPoly mp_pcd_image(const ComplexPoly& psi, const ComplexPoly& phi, int order, const ComplexPoly& p) {
  return mp_multiply(to_mp(psi), mp_compose(mp_derivative(to_mp(p), order), to_mp(phi)));
}

/// Durand-Kerner on the 50-digit coefficients; leading coefficients below
/// 1e-40 of the largest are dropped.
inline std::vector<Complex> mp_roots(MpPoly p) {
  using boost::multiprecision::abs;
  MpComplex::value_type largest = 0;
  for (const MpComplex& c : p) largest = std::max(largest, MpComplex::value_type(abs(c)));
  while (p.size() > 1 && abs(p.back()) <= largest * 1e-40) p.pop_back();
  const std::size_t d = p.size() - 1;
  if (d == 0) return {};
  for (MpComplex& c : p) c /= p.back();
  double radius = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    radius = std::max(radius, std::pow(static_cast<double>(abs(p[k])), 1.0 / static_cast<double>(d - k)));
  }
  radius = 2.0 * radius + 1e-3;
  std::vector<MpComplex> z;
  for (std::size_t k = 0; k < d; ++k) {
    const Complex s = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.25) / static_cast<double>(d));
    z.emplace_back(s.real(), s.imag());
  }
  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      MpComplex value = p[d];
      for (std::size_t k = d; k-- > 0;) value = value * z[i] + p[k];
      MpComplex den(1);
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      const MpComplex step = value / den;
      z[i] -= step;
      change = std::max(change, static_cast<double>(abs(step)) / std::max(1.0, static_cast<double>(abs(z[i]))));
    }
    if (change < 1e-30) break;
  }
  std::vector<Complex> out;
  for (const MpComplex& r : z) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

/// No root of the 50-digit polynomial is Inside omega.
inline bool mp_stable(const MpPoly& p, const Region& omega) {
  for (const Complex& r : mp_roots(p)) {
    if (stabil::membership(omega, r) == stabil::Membership::Inside) return false;
  }
  return true;
}

/// Random bounded region with a disk D(center, radius) containing it.
struct Enclosed {
  Region region;
  Complex center;
  double radius = 1.0;
};

/// With `centered` the region is centered at the origin, which keeps
/// high powers of maps built on it tame in the monomial basis.
inline Enclosed random_bounded_region(Rng& rng, double band = 0.0, bool centered = false) {
  const Complex c = centered ? Complex(0.0) : stabil::uniform_in_disk(rng, 0.0, 2.0);
  const double r = stabil::uniform(rng, 0.5, 2.0);
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return {Region::disk(c, r, false, band), c, r};
    case 1: return {Region::disk(c, r, true, band), c, r};
    case 2: return {Region::annulus(c, r * stabil::uniform(rng, 0.2, 0.7), r, false, false, band), c, r};
    case 3: return {Region::punctured_disk(c, r, false, band), c, r};
    default: {
      std::vector<Complex> pts;
      const int k = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int i = 0; i < k; ++i) pts.push_back(stabil::uniform_in_disk(rng, c, r / 2.0));
      return {Region::sampled(pts, r / 2.0, band), c, r};
    }
  }
}

/// A disk D(center, radius) sitting strictly inside omega.
inline std::pair<Complex, double> inner_disk(Rng& rng, const Region& omega) {
  const Complex phase = stabil::unit_phase(rng);
  if (const auto* d = std::get_if<stabil::Disk>(&omega.shape)) return {d->center, 0.9 * d->radius};
  if (const auto* a = std::get_if<stabil::Annulus>(&omega.shape)) {
    return {a->center + 0.5 * (a->r_inner + a->r_outer) * phase, 0.45 * (a->r_outer - a->r_inner)};
  }
  if (const auto* d = std::get_if<stabil::PuncturedDisk>(&omega.shape)) {
    return {d->center + 0.5 * d->radius * phase, 0.45 * d->radius};
  }
  const auto& s = std::get<stabil::Sampled>(omega.shape);
  return {s.points.front(), 0.9 * s.radius};
}

/// Polynomial u of degree 1..max_degree with sum |u_k| = 1 and at least 0.3
/// of the mass on nonconstant terms, so |u| < 1 on the open unit disk.
inline ComplexPoly random_disk_self_map(Rng& rng, int max_degree) {
  const int d = std::uniform_int_distribution<int>(1, max_degree)(rng);
  Eigen::VectorXcd u(d + 1);
  for (int k = 0; k <= d; ++k) u[k] = stabil::uniform_in_disk(rng, 0.0, 1.0);
  const double tail = u.tail(d).cwiseAbs().sum();
  const double head = std::abs(u[0]);
  const double share = stabil::uniform(rng, 0.3, 1.0);
  u.tail(d) *= share / tail;
  u[0] *= head > 0.0 ? (1.0 - share) / head : 0.0;
  return ComplexPoly(u);
}

/// Omega_1 bounded, psi stable in Omega_2, phi(closure Omega_2) inside a disk within Omega_1.
struct Conforming {
  Region omega1;
  Region omega2;
  ComplexPoly psi;
  ComplexPoly phi;
};

inline Conforming random_conforming(Rng& rng, std::uint64_t seed, int max_psi_degree = 3, int max_phi_degree = 2) {
  Conforming out;
  out.omega1 = random_bounded_region(rng).region;
  const Enclosed e2 = random_bounded_region(rng);
  out.omega2 = e2.region;
  const auto [t, s] = inner_disk(rng, out.omega1);
  const ComplexPoly u = random_disk_self_map(rng, max_phi_degree);
  out.phi = stabil::compose(u, ComplexPoly{-e2.center / e2.radius, Complex(1.0 / e2.radius)}) * Complex(s) +
            ComplexPoly::constant(t);
  out.psi = stabil::random_stable_poly(out.omega2, std::uniform_int_distribution<int>(0, max_psi_degree)(rng), seed);
  return out;
}

/// Witness re-verification: p stable in omega1 by the oracle, the image
/// recomputed column by column matches, and image_root is Inside omega2
/// with a small residual.
inline bool witness_holds(const stabil::OperatorTruncation& a, const Region& omega1, const Region& omega2,
                          const stabil::Witness& w) {
  if (!stable_by_oracle(w.p, omega1)) return false;
  const ComplexPoly image = apply_by_columns(a, w.p);
  if (rel_err(w.image, image) > 1e-12) return false;
  if (stabil::membership(omega2, w.image_root) != stabil::Membership::Inside) return false;
  const double scale = image.abs_eval(std::abs(w.image_root));
  return std::abs(image(w.image_root)) <= 1e-8 * scale;
}

}  // namespace oracle
