#include "stabil/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "stabil/canonical.hpp"
#include "stabil/classify.hpp"
#include "stabil/companion.hpp"
#include "stabil/hardy.hpp"
#include "stabil/random.hpp"

namespace stabil {

namespace {

using Complex = std::complex<double>;

// A case returns an empty string on success and a description otherwise.
using Case = std::function<std::string(int, Rng&)>;

SuiteResult run_suite(std::string name, int cases, std::uint64_t seed, const Case& body) {
  SuiteResult out;
  out.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);
  for (int i = 0; i < cases && out.passed; ++i) {
    ++out.cases;
    try {
      out.detail = body(i, rng);
    } catch (const std::exception& e) {
      out.detail = std::string("exception: ") + e.what();
    }
    out.passed = out.detail.empty();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Rational random_rational(Rng& rng) {
  const int num = std::uniform_int_distribution<int>(-20, 20)(rng);
  const int den = std::uniform_int_distribution<int>(1, 9)(rng);
  return Rational(num, den);
}

std::vector<Complex> random_zeros(Rng& rng, int count) {
  std::vector<Complex> zeros;
  for (int k = 0; k < count; ++k) zeros.push_back(uniform_in_ring(rng, 0.0, 0.5, 4.0));
  return zeros;
}

// n-th derivative at 0 of e^{beta w} prod_k e^{w/w_k} (1 - w/w_k), by the
// trapezoid rule for the Cauchy integral on |w| = 1.
Complex moment_by_contour(std::span<const Complex> zeros, Complex beta, int n) {
  constexpr int kNodes = 256;
  Complex sum = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * i / kNodes);
    Complex e = std::exp(beta * w);
    for (const Complex& zk : zeros) e *= std::exp(w / zk) * (1.0 - w / zk);
    sum += e * std::pow(w, -n);
  }
  return std::tgamma(n + 1.0) * sum / static_cast<double>(kNodes);
}

struct PcSample {
  OperatorTruncation a;
  Region omega2;
  ComplexPoly psi;
  ComplexPoly phi;
};

// psi is stable in omega2 = D(c, r) and |phi| <= 0.9 on omega2, so A = M_psi C_phi
// maps D-stable polynomials to omega2-stable ones.
PcSample random_pc(Rng& rng, int n, std::uint64_t seed) {
  PcSample s;
  const Complex c = uniform_in_disk(rng, 0.0, 1.0);
  const double r = uniform(rng, 0.3, 1.5);
  s.omega2 = Region::disk(c, r);
  s.psi = random_stable_poly(s.omega2, std::uniform_int_distribution<int>(0, 3)(rng), seed);
  const int d = std::uniform_int_distribution<int>(1, 2)(rng);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(d + 1);
  for (int k = 0; k <= d; ++k) u[k] = uniform_in_disk(rng, 0.0, 1.0);
  u *= 0.9 / u.cwiseAbs().sum();
  // phi(z) = sum u_k ((z - c) / r)^k
  s.phi = compose(ComplexPoly(u), ComplexPoly{-c / r, Complex(1.0 / r)});
  s.a = make_product_composition(s.psi, s.phi, n);
  return s;
}

std::string describe(const std::string& what, int i) {
  std::ostringstream os;
  os << what << " (case " << i << ")";
  return os.str();
}

}  // namespace

std::vector<SuiteResult> run_selfcheck(CheckLevel level, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const int max_n = level == CheckLevel::Fast ? 8 : 12;

  out.push_back(run_suite("exact-identity", 40, mix_seed(seed, 1), [&](int i, Rng& rng) -> std::string {
    const Rational beta = random_rational(rng);
    for (int n = 0; n <= max_n; ++n) {
      std::vector<Rational> c(static_cast<std::size_t>(2 * n + 1));
      for (Rational& x : c) x = random_rational(rng);
      if (!combinatorial_identity_check(n, c, beta)) return describe("identity fails at n = " + std::to_string(n), i);
    }
    return {};
  }));

  out.push_back(run_suite("moment-formula", 40, mix_seed(seed, 2), [](int i, Rng& rng) -> std::string {
    const std::vector<Complex> zeros = random_zeros(rng, std::uniform_int_distribution<int>(0, 4)(rng));
    const Complex beta = uniform_in_disk(rng, 0.0, 1.5);
    const CanonicalProduct cp = canonical_product(zeros, 10);
    for (int n = 0; n <= 10; ++n) {
      const Complex got = moment_formula(cp.c, beta, n);
      const Complex want = moment_by_contour(zeros, beta, n);
      if (std::abs(got - want) > 1e-9 * std::max(1.0, std::abs(want))) {
        return describe("moment formula disagrees with the contour integral at n = " + std::to_string(n), i);
      }
    }
    return {};
  }));

  out.push_back(run_suite("coefficient-bounds", 40, mix_seed(seed, 3), [](int i, Rng& rng) -> std::string {
    const CanonicalProduct cp = canonical_product(random_zeros(rng, std::uniform_int_distribution<int>(1, 8)(rng)), 30);
    if (std::abs(cp.c[0] - 1.0) > 1e-14 || std::abs(cp.c[1]) > 1e-14) return describe("c_0 != 1 or c_1 != 0", i);
    if (!coeff_bound_check(cp)) return describe("|c_n| exceeds (gamma + |sigma|)^n / n!", i);
    return {};
  }));

  if (level == CheckLevel::Fast) return out;

  out.push_back(run_suite("g-triviality", 6, mix_seed(seed, 4), [](int i, Rng& rng) -> std::string {
    const PcSample s = random_pc(rng, 20, mix_seed(static_cast<std::uint64_t>(i), 4));
    const CompanionData data = second_companion(s.a, 10);
    for (const Complex& z : grid_points(s.omega2, 6)) {
      if (!inside(s.omega2, z)) continue;
      for (const Complex& w : grid_points(Region::disk(0.0, 2.0), 6)) {
        if (std::abs(data.g_direct(z, w) - 1.0) > data.truncation_bound(z, w)) return describe("|G - 1| above bound", i);
      }
    }
    return {};
  }));

  out.push_back(run_suite("moment-bounds", 10, mix_seed(seed, 5), [](int i, Rng& rng) -> std::string {
    const PcSample s = random_pc(rng, 8, mix_seed(static_cast<std::uint64_t>(i), 5));
    const std::vector<Complex> grid = grid_points(s.omega2, 12);
    if (!moment_bound_check(s.a, s.omega2, grid).passed) return describe("moment ratio bound violated", i);
    return {};
  }));

  out.push_back(run_suite("oracle-agreement", 200, mix_seed(seed, 6), [](int i, Rng& rng) -> std::string {
    const int degree = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<Complex> zs;
    for (int k = 0; k < degree; ++k) {
      zs.push_back(uniform(rng, 0.0, 1.0) < 0.5 ? uniform_in_disk(rng, 0.0, 0.9) : uniform_in_ring(rng, 0.0, 1.1, 3.0));
    }
    const ComplexPoly p = ComplexPoly::from_roots(zs);
    const OuterVerdict jensen = jensen_outer_test(p).verdict;
    const OuterVerdict root = root_outer_test(p).verdict;
    if (jensen != OuterVerdict::Borderline && jensen != root) return describe("Jensen and root tests disagree", i);
    return {};
  }));

  out.push_back(run_suite("functional-law", 100, mix_seed(seed, 7), [](int i, Rng& rng) -> std::string {
    const Complex sigma = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
    const Complex beta = uniform_in_disk(rng, 0.0, 0.95);
    std::vector<Complex> rho(16);
    Complex power = 1.0;
    for (Complex& r : rho) {
      r = sigma * power;
      power *= beta;
    }
    const auto pe = classify_functional(rho, H2Mode::Outer);
    if (!pe || std::abs(pe->sigma - sigma) > 1e-12 || std::abs(pe->z0 - beta) > 1e-12) {
      return describe("geometric sequence not recovered", i);
    }
    rho[2 + static_cast<std::size_t>(i % 14)] += 1e3 * 1e-10;
    if (classify_functional(rho, H2Mode::Outer)) return describe("perturbed sequence accepted", i);
    return {};
  }));

  out.push_back(run_suite("sufficiency", 10, mix_seed(seed, 8), [](int i, Rng& rng) -> std::string {
    const PcSample s = random_pc(rng, 8, mix_seed(static_cast<std::uint64_t>(i), 8));
    const Region disk = Region::unit_disk();
    for (int k = 0; k < 20; ++k) {
      const ComplexPoly p = random_stable_poly(disk, 1 + k % 8, mix_seed(static_cast<std::uint64_t>(i), 100 + k));
      if (auto w = check_candidate(s.a, disk, s.omega2, p)) return describe("image not stable", i);
    }
    return {};
  }));

  return out;
}

}  // namespace stabil
