#pragma once

#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stabil/geometry.hpp"

namespace stabil {

/// {|z - center| < radius}, or <= when closed.
struct Disk {
  Complex center;
  double radius = 1.0;
  bool closed = false;
};

/// {r_inner < |z - center| < r_outer} with per-boundary closure flags.
struct Annulus {
  Complex center;
  double r_inner = 0.0;
  double r_outer = 1.0;
  bool closed_inner = false;
  bool closed_outer = false;
};

/// Disk with its center removed.
struct PuncturedDisk {
  Complex center;
  double radius = 1.0;
  bool closed = false;
};

/// The open set C \ K for a closed convex K.
struct ConvexComplement {
  ConvexSet hull;
};

/// Union of open disks of common radius around finitely many probe points.
/// The boundary distance is a heuristic (exact only for a single point).
struct Sampled {
  std::vector<Complex> points;
  double radius = 0.0;
};

using RegionShape = std::variant<Disk, Annulus, PuncturedDisk, ConvexComplement, Sampled>;

enum class Membership { Inside, Outside, Band };

struct Region {
  RegionShape shape;
  double boundary_band = 0.0;

  static Region disk(Complex center, double radius, bool closed = false, double band = 0.0);
  static Region annulus(Complex center, double r_inner, double r_outer, bool closed_inner = false,
                        bool closed_outer = false, double band = 0.0);
  static Region punctured_disk(Complex center, double radius, bool closed = false, double band = 0.0);
  static Region convex_complement(ConvexSet hull, double band = 0.0);
  static Region sampled(std::vector<Complex> points, double radius, double band = 0.0);
  static Region unit_disk(bool closed = false, double band = 0.0) { return disk(0.0, 1.0, closed, band); }
};

std::string_view kind(const Region& omega);

/// Distance from z to the boundary of the region.
double boundary_distance(const Region& omega, Complex z);

/// Band when the band is positive and z lies within it of the boundary;
/// otherwise the closure flags decide points exactly on the boundary.
Membership membership(const Region& omega, Complex z);

inline bool inside(const Region& omega, Complex z) { return membership(omega, z) == Membership::Inside; }

bool bounded(const Region& omega);
bool interior_nonempty(const Region& omega);

/// sup{|z| : z in omega}; infinite for unbounded regions.
double sup_abs(const Region& omega);

/// A deterministic interior point together with its distance to the boundary.
std::pair<Complex, double> interior_point(const Region& omega);

/// Axis-aligned box (center, half width) covering the region, or for
/// complements the excluded convex set with a margin around it.
std::pair<Complex, double> sampling_box(const Region& omega);

/// Interior points of a g x g lattice over sampling_box.
std::vector<Complex> grid_points(const Region& omega, int g);

/// tau * omega; the boundary band scales with the set.
Region scale_region(const Region& omega, double tau);

}  // namespace stabil
