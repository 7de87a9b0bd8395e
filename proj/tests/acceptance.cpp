// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "stabil/canonical.hpp"
#include "stabil/charfn.hpp"
#include "stabil/companion.hpp"
#include "stabil/hardy.hpp"
#include "support/oracles.hpp"

using namespace stabil;
using oracle::Conforming;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < limit_seconds;
  const bool ok = out.passed && in_time;
  if (!ok) ++failures;
  std::printf("[%s] criterion %2d %-28s %s; %.2f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), seconds, limit_seconds, in_time ? "" : " TIMEOUT");
  std::fflush(stdout);
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Conforming draws restricted to Omega_1 = unit disk.
Conforming into_unit_disk(Rng& rng, std::uint64_t seed, int max_psi, int max_phi) {
  Conforming c = oracle::random_conforming(rng, seed, max_psi, max_phi);
  c.omega1 = Region::unit_disk();
  const oracle::Enclosed e2 = oracle::random_bounded_region(rng, 0.0, true);
  c.omega2 = e2.region;
  const ComplexPoly u = oracle::random_disk_self_map(rng, max_phi);
  c.phi = compose(u, ComplexPoly{-e2.center / e2.radius, Complex(1.0 / e2.radius)}) * Complex(0.9);
  c.psi = random_stable_poly(c.omega2, std::uniform_int_distribution<int>(0, max_psi)(rng), seed);
  return c;
}

std::vector<Complex> inside_points(const Region& omega, int g, std::size_t count) {
  std::vector<Complex> all;
  for (const Complex& z : grid_points(omega, g)) {
    if (membership(omega, z) == Membership::Inside) all.push_back(z);
  }
  if (all.size() <= count) return all;
  std::vector<Complex> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[i * all.size() / count]);
  return out;
}

OperatorTruncation columns_1_z_3() {
  const std::vector<ComplexPoly> cols{ComplexPoly::constant(1.0), ComplexPoly{Complex(0.0), Complex(1.0)},
                                      ComplexPoly::constant(3.0)};
  return OperatorTruncation::from_columns(cols);
}

}  // namespace

int main() {
  constexpr int kN = 8;

  criterion(1, "sufficiency", 60.0, [] {
    Rng rng(101);
    int images = 0, violations = 0, unresolved = 0, refuted = 0, zero = 0, mismatched = 0;
    for (int t = 0; t < 200; ++t) {
      const Conforming c = oracle::random_conforming(rng, mix_seed(1, t));
      const OperatorTruncation a = make_product_composition(c.psi, c.phi, kN);
      for (int k = 0; k < 100; ++k) {
        const ComplexPoly p = random_stable_poly(c.omega1, 1 + k % kN, mix_seed(mix_seed(1, t), k));
        const ComplexPoly image = apply(a, p);
        ++images;
        if (oracle::rel_err(image, multiply(c.psi, compose(p, c.phi))) > 1e-10) ++mismatched;
        if (image.is_zero() || negligible_image(a, p, image)) {
          ++zero;
          continue;
        }
        const StabilityResult s = is_stable(image, c.omega2);
        if (s.confidently_unstable(c.omega2)) {
          ++violations;
        } else if (s.status == Stability::Unstable) {
          ++unresolved;
          if (!oracle::mp_stable(oracle::mp_pcd_image(c.psi, c.phi, 0, p), c.omega2)) ++refuted;
        }
      }
    }
    return Outcome{violations == 0 && refuted == 0 && mismatched == 0,
                   fmt("%d violations over %d images (%d zero, %d unresolved in double, %d of those unstable in 50 "
                       "digits), %d image mismatches",
                       violations, images, zero, unresolved, refuted, mismatched)};
  });

  criterion(2, "classifier round trip", 120.0, [] {
    Rng rng(202);
    int wrong = 0;
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const Conforming c = oracle::random_conforming(rng, mix_seed(2, t));
      const OperatorTruncation a = make_product_composition(c.psi, c.phi, 6);
      const Classification r = classify(a, c.omega1, c.omega2);
      if (r.verdict != Verdict::ProductComposition) {
        ++wrong;
        continue;
      }
      worst = std::max({worst, oracle::rel_err(r.psi, c.psi), oracle::rel_err(r.phi, c.phi)});
    }
    for (int t = 0; t < 100; ++t) {
      const Conforming c = oracle::random_conforming(rng, mix_seed(22, t));
      std::vector<Complex> nu(7);
      for (Complex& x : nu) x = uniform_in_disk(rng, 0.0, 2.0);
      const OperatorTruncation a = make_rank1(nu, c.psi, 6);
      const Classification r = classify(a, c.omega1, c.omega2);
      if (r.verdict != Verdict::Rank1) {
        ++wrong;
        continue;
      }
      // nu and psi are determined up to a reciprocal scalar; compare the products.
      double scale = 0.0, diff = 0.0;
      for (std::size_t n = 0; n < nu.size(); ++n) {
        const ComplexPoly want = c.psi * nu[n];
        const ComplexPoly got = r.psi * r.nu[n];
        scale = std::max(scale, want.max_abs());
        for (Eigen::Index k = 0; k < std::max(want.size(), got.size()); ++k) {
          diff = std::max(diff, std::abs(got[k] - want[k]));
        }
      }
      worst = std::max(worst, diff / scale);
    }
    return Outcome{wrong == 0 && worst <= 1e-8,
                   fmt("%d misclassified of 300, worst relative coefficient error %.2e", wrong, worst)};
  });

  criterion(3, "falsification", 60.0, [] {
    const Region closed = Region::unit_disk(true);
    int found = 0, verified = 0, total = 0;
    auto run = [&](const OperatorTruncation& a, const Region& o1, const Region& o2, std::uint64_t seed) {
      ++total;
      ClassifyOptions opts;
      opts.seed = seed;
      const Classification r = classify(a, o1, o2, opts);
      if (r.verdict != Verdict::NotPreserving || !r.witness) return;
      ++found;
      if (oracle::witness_holds(a, o1, o2, *r.witness)) ++verified;
    };
    run(columns_1_z_3(), closed, closed, 0);
    Rng rng(303);
    for (int t = 0; t < 20; ++t) {
      const Conforming c = oracle::random_conforming(rng, mix_seed(3, t));
      Eigen::MatrixXcd m = make_product_composition(c.psi, c.phi, 6).matrix();
      // Push one higher moment half its own size in a random direction.
      const Eigen::Index j = 2 + t % 5;
      Eigen::VectorXcd noise(m.rows());
      for (Eigen::Index k = 0; k < noise.size(); ++k) noise[k] = uniform_in_disk(rng, 0.0, 1.0);
      m.col(j) += 0.5 * m.col(j).norm() / noise.norm() * noise;
      run(OperatorTruncation(m), c.omega1, c.omega2, static_cast<std::uint64_t>(t));
    }
    return Outcome{found == total && verified == total,
                   fmt("%d/%d NotPreserving, %d/%d witnesses re-verified", found, total, verified, total)};
  });

  criterion(4, "exact combinatorial identity", 30.0, [] {
    Rng rng(404);
    auto rational = [&] {
      return Rational(std::uniform_int_distribution<int>(-50, 50)(rng), std::uniform_int_distribution<int>(1, 20)(rng));
    };
    int failed = 0, checks = 0;
    for (int t = 0; t < 100; ++t) {
      std::vector<Rational> c(25);
      for (Rational& x : c) x = rational();
      const Rational beta = rational();
      for (int n = 0; n <= 12; ++n) {
        ++checks;
        if (!combinatorial_identity_check(n, std::span(c).first(static_cast<std::size_t>(2 * n + 1)), beta)) ++failed;
      }
    }
    return Outcome{failed == 0, fmt("%d of %d exact checks failed (n <= 12, 100 draws)", failed, checks)};
  });

  criterion(5, "canonical-product bound", 10.0, [] {
    Rng rng(505);
    int failed = 0;
    double worst_c0 = 0.0, worst_c1 = 0.0;
    for (int t = 0; t < 100; ++t) {
      std::vector<Complex> zeros;
      const int k = std::uniform_int_distribution<int>(1, 10)(rng);
      for (int i = 0; i < k; ++i) zeros.push_back(uniform_in_ring(rng, 0.0, 0.5, 5.0));
      const CanonicalProduct cp = canonical_product(zeros, 30);
      worst_c0 = std::max(worst_c0, std::abs(cp.c[0] - 1.0));
      worst_c1 = std::max(worst_c1, std::abs(cp.c[1]));
      if (!coeff_bound_check(cp, 1e-12)) ++failed;
    }
    return Outcome{failed == 0 && worst_c0 <= 1e-14 && worst_c1 <= 1e-14,
                   fmt("%d of 100 bound failures, max |c0 - 1| = %.1e, max |c1| = %.1e", failed, worst_c0, worst_c1)};
  });

  criterion(6, "G-triviality, F2 zero-free", 60.0, [] {
    Rng rng(606);
    constexpr int kT = 20;
    std::vector<Complex> wgrid;
    for (int i = 0; i < 20; ++i) wgrid.push_back(std::polar(0.1 + 1.9 * i / 19.0, 2.0 * std::numbers::pi * 0.618 * i));
    int g_fail = 0, f2_fail = 0;
    double worst_ratio = 0.0;
    for (int t = 0; t < 50; ++t) {
      const Conforming c = into_unit_disk(rng, mix_seed(6, t), 2, 2);
      const OperatorTruncation a = make_product_composition(c.psi, c.phi, 2 * kT);
      const std::vector<Complex> zgrid = inside_points(c.omega2, 16, 20);
      const CompanionData data = second_companion(a, kT);
      for (const Complex& z : zgrid) {
        for (const Complex& w : wgrid) {
          const double err = std::abs(data.g_direct(z, w) - 1.0);
          const double bound = data.truncation_bound(z, w);
          worst_ratio = std::max(worst_ratio, err / bound);
          if (err > bound) ++g_fail;
        }
      }
      const F2ScanReport scan = f2_zero_scan(a, kT, zgrid, wgrid);
      if (!scan.separated || !(scan.min_abs > scan.max_bound)) ++f2_fail;
    }
    return Outcome{g_fail == 0 && f2_fail == 0,
                   fmt("%d |G-1| bound violations (worst err/bound %.2f), %d operators with min|F2| not above bound",
                       g_fail, worst_ratio, f2_fail)};
  });

  criterion(7, "moment bounds", 30.0, [] {
    Rng rng(707);
    int failed = 0;
    for (int t = 0; t < 25; ++t) {
      const Conforming c = into_unit_disk(rng, mix_seed(7, t), 3, 2);
      const OperatorTruncation a = make_product_composition(c.psi, c.phi, kN);
      if (!moment_bound_check(a, c.omega2, grid_points(c.omega2, 24)).passed) ++failed;
    }
    const Region disk = Region::unit_disk();
    for (int t = 0; t < 25; ++t) {
      const Complex z0 = uniform_in_disk(rng, 0.0, 1.0);
      std::vector<Complex> nu(kN + 1);
      for (int n = 0; n <= kN; ++n) nu[static_cast<std::size_t>(n)] = std::pow(z0, n);
      const OperatorTruncation a = make_rank1(nu, random_stable_poly(disk, 2, mix_seed(77, t)), kN);
      if (!moment_bound_check(a, disk, grid_points(disk, 24)).passed) ++failed;
    }
    const bool control = !moment_bound_check(columns_1_z_3(), disk, grid_points(disk, 24)).passed;
    return Outcome{failed == 0 && control,
                   fmt("%d of 50 operators fail; columns [1, z, 3] %s", failed, control ? "flagged" : "NOT flagged")};
  });

  criterion(8, "Hardy oracle agreement", 60.0, [] {
    Rng rng(808);
    int agree = 0, hard_disagree = 0;
    for (int t = 0; t < 1000; ++t) {
      const int degree = std::uniform_int_distribution<int>(1, 12)(rng);
      std::vector<Complex> zs;
      for (int k = 0; k < degree; ++k) {
        zs.push_back(uniform(rng, 0.0, 1.0) < 0.5 ? uniform_in_disk(rng, 0.0, 0.9) : uniform_in_ring(rng, 0.0, 1.1, 3.0));
      }
      const ComplexPoly p = ComplexPoly::from_roots(zs, uniform(rng, 0.5, 2.0) * unit_phase(rng));
      const OuterVerdict j = jensen_outer_test(p).verdict;
      const OuterVerdict r = root_outer_test(p).verdict;
      if (j == r) {
        ++agree;
      } else if (j != OuterVerdict::Borderline && r != OuterVerdict::Borderline) {
        ++hard_disagree;
      }
    }
    int recovered = 0, rejected = 0;
    for (int t = 0; t < 500; ++t) {
      const Complex sigma = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      const Complex beta = uniform_in_disk(rng, 0.0, 0.95);
      std::vector<Complex> rho(12);
      Complex power = 1.0;
      for (Complex& x : rho) {
        x = sigma * power;
        power *= beta;
      }
      const auto pe = classify_functional(rho, H2Mode::Outer, 1e-10);
      if (pe && std::abs(pe->sigma - sigma) <= 1e-12 && std::abs(pe->z0 - beta) <= 1e-12) ++recovered;
      // Entries 0 and 1 define the fit, so the perturbation goes to a later one.
      rho[2 + static_cast<std::size_t>(t % 10)] += 1e3 * 1e-10 * unit_phase(rng);
      if (!classify_functional(rho, H2Mode::Outer, 1e-10)) ++rejected;
    }
    return Outcome{agree >= 998 && hard_disagree == 0 && recovered == 500 && rejected == 500,
                   fmt("Jensen/root agree %d/1000 (%d outside Borderline), functional recovered %d/500, "
                       "perturbed rejected %d/500",
                       agree, hard_disagree, recovered, rejected)};
  });

  criterion(9, "BB bridge", 30.0, [] {
    Rng rng(909);
    const Region disk = Region::unit_disk();
    std::vector<OperatorTruncation> ops{identity_operator(kN), make_dilation(0.5, kN),
                                        make_product_composition(ComplexPoly{Complex(-2.0), Complex(1.0)},
                                                                 ComplexPoly::monomial(2), kN)};
    for (int t = 0; t < 30; ++t) {
      const ComplexPoly psi = random_stable_poly(disk, std::uniform_int_distribution<int>(0, 3)(rng), mix_seed(9, t));
      ComplexPoly phi = oracle::random_disk_self_map(rng, 2);
      if (t % 3 == 0) phi = phi * Complex(0.9);
      ops.push_back(make_product_composition(psi, phi, kN));
    }
    int pc = 0, certified = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (classify(ops[i], disk, disk).verdict != Verdict::ProductComposition) continue;
      ++pc;
      if (bb_certificate(ops[i], 200, i)) ++certified;
    }
    return Outcome{pc == static_cast<int>(ops.size()) && certified == pc,
                   fmt("%d/%zu classified ProductComposition, %d passed the (1 + wz)^n certificate", pc, ops.size(),
                       certified)};
  });

  criterion(10, "Gauss-Lucas PCD", 60.0, [] {
    Rng rng(1010);
    int images = 0, violations = 0, unresolved = 0, refuted = 0;
    for (int t = 0; t < 50; ++t) {
      ConvexSet k;
      Complex anchor;
      bool round = false;
      switch (t % 3) {
        case 0: {
          const DiskSet d{uniform_in_disk(rng, 0.0, 2.0), uniform(rng, 0.3, 2.0)};
          k = d;
          anchor = d.center;
          round = true;
          break;
        }
        case 1: {
          const HalfPlane h = make_half_plane(unit_phase(rng), uniform(rng, -1.0, 1.0));
          k = h;
          anchor = h.normal * (h.offset - uniform(rng, 0.0, 1.0));
          break;
        }
        default: {
          std::vector<Complex> pts;
          for (int i = 0; i < 5; ++i) pts.push_back(uniform_in_disk(rng, 0.0, 2.0));
          const PolygonHull hull = make_polygon_hull(pts);
          k = hull;
          anchor = 0.0;
          for (const Complex& v : hull.vertices) anchor += v;
          anchor /= static_cast<double>(hull.vertices.size());
        }
      }
      const Region omega = Region::convex_complement(k);
      // Homothety about a point of K with ratio >= 1 maps C \ K into itself;
      // about the center of a disk any rotation and power z^2 (scaled) also do.
      const double ratio = uniform(rng, 1.0, 2.0);
      ComplexPoly phi{anchor * (1.0 - ratio), Complex(ratio)};
      if (round) {
        const double r = std::get<DiskSet>(k).radius;
        const ComplexPoly shifted{-anchor, Complex(1.0)};
        phi = (t % 2 == 0 ? shifted * (ratio * unit_phase(rng)) : multiply(shifted, shifted) * (ratio / r * unit_phase(rng))) +
              ComplexPoly::constant(anchor);
      }
      const ComplexPoly psi = random_stable_poly(omega, std::uniform_int_distribution<int>(0, 3)(rng), mix_seed(10, t));
      const int order = t % 3;
      const OperatorTruncation a = make_pcd(psi, phi, order, kN);
      for (int s = 0; s < 50; ++s) {
        const ComplexPoly p = random_stable_poly(omega, 1 + s % kN, mix_seed(mix_seed(10, t), s));
        const ComplexPoly image = apply(a, p);
        ++images;
        if (image.is_zero() || negligible_image(a, p, image)) continue;
        const StabilityResult st = is_stable(image, omega);
        if (st.confidently_unstable(omega)) {
          ++violations;
        } else if (st.status == Stability::Unstable) {
          // Clustered roots far from the origin are ill-conditioned in the
          // monomial basis; rebuild the image in 50 digits and decide there.
          ++unresolved;
          if (!oracle::mp_stable(oracle::mp_pcd_image(psi, phi, order, p), omega)) ++refuted;
        }
      }
    }
    return Outcome{violations == 0 && refuted == 0,
                   fmt("%d violations over %d images (%d unresolved in double, %d of those unstable in 50 digits)",
                       violations, images, unresolved, refuted)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
