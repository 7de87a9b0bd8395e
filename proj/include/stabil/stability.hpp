#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "stabil/polynomial.hpp"
#include "stabil/region.hpp"
#include "stabil/roots.hpp"

namespace stabil {

enum class Stability { Stable, Unstable, Borderline, ZeroPoly };

std::string_view to_string(Stability s);

struct StabilityResult {
  Stability status = Stability::Stable;
  /// First root (in root order) that is Inside for Unstable, in the band for Borderline.
  std::optional<Complex> witness;
  /// First-order error radius of the witness under coefficient rounding;
  /// infinite for a numerically multiple root.
  double witness_uncertainty = 0.0;
  RootSet roots;

  /// Unstable with the witness farther inside than its error radius.
  bool confidently_unstable(const Region& omega) const;
};

/// Stable iff no root is Inside omega; nonzero constants are Stable.
StabilityResult is_stable(const ComplexPoly& p, const Region& omega, const RootOptions& options = {});

/// Weierstrass inclusion radius of the root r of p: deg(p) times
/// (|p(r)| + rounding) / |lead * prod_{s != r} (r - s)| over the other roots.
/// Infinite for a root of multiplicity above one.
double root_uncertainty(const ComplexPoly& p, const RootSet& rs, Complex r);

struct SamplerOptions {
  /// Rejected candidate roots tolerated per requested root.
  int budget_per_root = 10000;
};

/// Random polynomial whose roots all lie Outside omega, at least
/// 2 * boundary_band (plus a small relative margin) away from its boundary.
/// Leading coefficient has modulus in [0.5, 2] and a random phase.
ComplexPoly random_stable_poly(const Region& omega, int degree, std::uint64_t seed,
                               const SamplerOptions& options = {});

enum class MapVerdict { Certified, Refuted, SampledOnly };

std::string_view to_string(MapVerdict v);

struct MapResult {
  MapVerdict verdict = MapVerdict::SampledOnly;
  std::optional<Complex> witness;
  /// Rigorous enclosure of |phi - c_target| over the closed source, when computed.
  std::optional<double> upper;
  std::optional<double> lower;
  int samples = 0;
};

/// Decides phi(source) inside target. Refutation comes from a lattice plus
/// near-boundary circles of the source; certification applies to
/// disk-like sources and targets through the maximum (and, where needed,
/// minimum) modulus principle with a second-order Taylor pad between
/// boundary samples.
MapResult maps_into(const ComplexPoly& phi, const Region& source, const Region& target, int grid_density = 64);

}  // namespace stabil
