#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabil/operator.hpp"
#include "stabil/region.hpp"
#include "stabil/stability.hpp"

namespace stabil {

enum class Verdict { Rank1, ProductComposition, NotPreserving, Inconclusive };

std::string_view to_string(Verdict v);

/// An Omega_1-stable p whose image has the root image_root Inside Omega_2.
struct Witness {
  ComplexPoly p;
  ComplexPoly image;
  std::complex<double> image_root;
};

struct Classification {
  Verdict verdict = Verdict::Inconclusive;
  int rank = 0;
  /// Rank1: A(f) = nu(f) psi with nu(z^n) = nu[n]. ProductComposition: A = M_psi C_phi.
  std::vector<std::complex<double>> nu;
  ComplexPoly psi;
  ComplexPoly phi;
  /// Relative residuals of psi_0^{n-1} psi_n = psi_1^n for n = 2..N.
  std::vector<double> residuals;
  std::optional<MapVerdict> map_verdict;
  std::optional<Witness> witness;
  /// The step that failed (NotPreserving, Inconclusive) or a note on how the
  /// verdict was reached.
  std::string report;
};

struct ClassifyOptions {
  double tol = 1e-8;
  int budget = 10000;
  std::uint64_t seed = 0;
  int grid = 64;
};

/// Decides whether A maps P(Omega_1) into P(Omega_2) u {0} at truncation.
/// PreconditionViolated for unbounded Omega_1 or Omega_2 without interior.
Classification classify(const OperatorTruncation& a, const Region& omega1, const Region& omega2,
                        const ClassifyOptions& options = {});

/// |psi_0^{n-1} psi_n - psi_1^n|_1 relative to |psi_0|_1^{n-1} |psi_n|_1 + |psi_1|_1^n,
/// computed after scaling all three by 1/|psi_0|_1.
double cross_residual(const ComplexPoly& psi0, const ComplexPoly& psi1, const ComplexPoly& psin, int n);

/// Checks one candidate: p must be Omega_1-stable and its nonzero image
/// confidently unstable in Omega_2.
std::optional<Witness> check_candidate(const OperatorTruncation& a, const Region& omega1, const Region& omega2,
                                       const ComplexPoly& p);

/// Randomized search for a witness, deterministic in the seed. Draw i has
/// degree 1 + (i mod N); even draws are random Omega_1-stable polynomials,
/// odd draws pin a root of the image at a random interior point of Omega_2.
std::optional<Witness> falsify(const OperatorTruncation& a, const Region& omega1, const Region& omega2, int budget,
                               std::uint64_t seed);

/// A((1 + w z)^n) is D-stable or zero for `samples` random w in the unit
/// disk and every n <= N.
bool bb_certificate(const OperatorTruncation& a, int samples, std::uint64_t seed);

struct Reduction {
  OperatorTruncation a_tilde;
  Region omega;
  double delta = 0.0;
  double epsilon = 0.0;
};

/// D_{1/eps} A D_delta, which maps P(D) into P(omega) with omega a disk
/// inside D and eps Omega_2, whenever A maps P(Omega_1) into P(Omega_2).
Reduction reduce_general(const OperatorTruncation& a, const Region& omega1, const Region& omega2);

}  // namespace stabil
