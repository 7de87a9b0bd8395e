#include "stabil/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stabil/error.hpp"
#include "stabil/overloaded.hpp"

namespace stabil {

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

std::vector<Complex> convex_hull(std::span<const Complex> points) {
  std::vector<Complex> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Complex& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

PolygonHull make_polygon_hull(std::span<const Complex> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "polygon hull needs at least one vertex");
  return PolygonHull{convex_hull(points)};
}

HalfPlane make_half_plane(Complex normal, double offset) {
  const double n = std::abs(normal);
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "half plane normal must be nonzero");
  return HalfPlane{normal / n, offset / n};
}

double distance_to_segment(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double distance_to_hull(std::span<const Complex> hull, Complex z) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return std::abs(z - hull[0]);
  bool inside = hull.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex a = hull[i];
    const Complex b = hull[(i + 1) % hull.size()];
    if (cross(a, b, z) < 0.0) inside = false;
    best = std::min(best, distance_to_segment(z, a, b));
  }
  return inside ? 0.0 : best;
}

double signed_distance(const ConvexSet& set, Complex z) {
  return std::visit(
      Overloaded{
          [&](const DiskSet& d) { return std::abs(z - d.center) - d.radius; },
          [&](const HalfPlane& h) { return (std::conj(h.normal) * z).real() - h.offset; },
          [&](const PolygonHull& p) {
            const auto& v = p.vertices;
            double edge = std::numeric_limits<double>::infinity();
            bool inside = v.size() >= 3;
            for (std::size_t i = 0; i < v.size(); ++i) {
              const Complex a = v[i];
              const Complex b = v[(i + 1) % v.size()];
              if (v.size() >= 3 && cross(a, b, z) < 0.0) inside = false;
              edge = std::min(edge, distance_to_segment(z, a, b));
            }
            if (v.size() == 1) edge = std::abs(z - v[0]);
            return inside ? -edge : edge;
          },
      },
      set);
}

bool is_bounded(const ConvexSet& set) { return !std::holds_alternative<HalfPlane>(set); }

bool has_interior(const ConvexSet& set) {
  if (const auto* d = std::get_if<DiskSet>(&set)) return d->radius > 0.0;
  if (const auto* p = std::get_if<PolygonHull>(&set)) return p->vertices.size() >= 3;
  return true;
}

ConvexSet scaled(const ConvexSet& set, double tau) {
  return std::visit(Overloaded{
                        [&](const DiskSet& d) -> ConvexSet { return DiskSet{tau * d.center, tau * d.radius}; },
                        [&](const HalfPlane& h) -> ConvexSet { return HalfPlane{h.normal, tau * h.offset}; },
                        [&](const PolygonHull& p) -> ConvexSet {
                          PolygonHull out;
                          for (const Complex& v : p.vertices) out.vertices.push_back(tau * v);
                          return out;
                        },
                    },
                    set);
}

}  // namespace stabil
