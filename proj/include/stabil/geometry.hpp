#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace stabil {

using Complex = std::complex<double>;

/// Closed disk.
struct DiskSet {
  Complex center;
  double radius = 0.0;
};

/// Closed half plane {z : Re(conj(normal) z) <= offset}, |normal| = 1.
struct HalfPlane {
  Complex normal{1.0, 0.0};
  double offset = 0.0;
};

/// Closed convex hull of finitely many points; vertices are kept in
/// counter-clockwise order with collinear points removed.
struct PolygonHull {
  std::vector<Complex> vertices;
};

using ConvexSet = std::variant<DiskSet, HalfPlane, PolygonHull>;

/// Andrew's monotone chain; counter-clockwise, no repeated or collinear points.
std::vector<Complex> convex_hull(std::span<const Complex> points);

PolygonHull make_polygon_hull(std::span<const Complex> points);
HalfPlane make_half_plane(Complex normal, double offset);

double distance_to_segment(Complex z, Complex a, Complex b);

/// Negative inside, zero on the boundary, positive outside.
double signed_distance(const ConvexSet& set, Complex z);

inline bool contains(const ConvexSet& set, Complex z) { return signed_distance(set, z) <= 0.0; }

/// Distance from z to the convex hull of `hull` (already a hull); zero inside.
double distance_to_hull(std::span<const Complex> hull, Complex z);

bool is_bounded(const ConvexSet& set);
bool has_interior(const ConvexSet& set);
ConvexSet scaled(const ConvexSet& set, double tau);

}  // namespace stabil
