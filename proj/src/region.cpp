#include "stabil/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stabil/error.hpp"
#include "stabil/overloaded.hpp"

namespace stabil {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nearest_probe(const Sampled& s, Complex z) {
  double best = kInf;
  for (const Complex& p : s.points) best = std::min(best, std::abs(z - p));
  return best;
}

bool exact_inside(const Region& omega, Complex z) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            const double r = std::abs(z - d.center);
            return r < d.radius || (d.closed && r == d.radius);
          },
          [&](const Annulus& a) {
            const double r = std::abs(z - a.center);
            const bool above = r > a.r_inner || (a.closed_inner && r == a.r_inner);
            const bool below = r < a.r_outer || (a.closed_outer && r == a.r_outer);
            return above && below;
          },
          [&](const PuncturedDisk& d) {
            const double r = std::abs(z - d.center);
            return r > 0.0 && (r < d.radius || (d.closed && r == d.radius));
          },
          [&](const ConvexComplement& c) { return signed_distance(c.hull, z) > 0.0; },
          [&](const Sampled& s) { return nearest_probe(s, z) < s.radius; },
      },
      omega.shape);
}

void check_band(double band) {
  if (!(band >= 0.0)) throw Error(ErrorCode::InvalidArgument, "boundary band must be nonnegative");
}

}  // namespace

Region Region::disk(Complex center, double radius, bool closed, double band) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
  check_band(band);
  return {Disk{center, radius, closed}, band};
}

Region Region::annulus(Complex center, double r_inner, double r_outer, bool closed_inner, bool closed_outer,
                       double band) {
  if (!(r_inner >= 0.0) || !(r_outer > r_inner)) {
    throw Error(ErrorCode::InvalidArgument, "annulus needs 0 <= r_inner < r_outer");
  }
  check_band(band);
  return {Annulus{center, r_inner, r_outer, closed_inner, closed_outer}, band};
}

Region Region::punctured_disk(Complex center, double radius, bool closed, double band) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
  check_band(band);
  return {PuncturedDisk{center, radius, closed}, band};
}

Region Region::convex_complement(ConvexSet hull, double band) {
  check_band(band);
  if (const auto* p = std::get_if<PolygonHull>(&hull)) {
    if (p->vertices.empty()) throw Error(ErrorCode::InvalidArgument, "polygon hull needs a vertex");
    hull = make_polygon_hull(p->vertices);
  } else if (const auto* h = std::get_if<HalfPlane>(&hull)) {
    hull = make_half_plane(h->normal, h->offset);
  } else if (const auto* d = std::get_if<DiskSet>(&hull); d && !(d->radius >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "disk radius must be nonnegative");
  }
  return {ConvexComplement{std::move(hull)}, band};
}

Region Region::sampled(std::vector<Complex> points, double radius, double band) {
  if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "probe radius must be nonnegative");
  check_band(band);
  return {Sampled{std::move(points), radius}, band};
}

std::string_view kind(const Region& omega) {
  return std::visit(Overloaded{
                        [](const Disk&) { return std::string_view("Disk"); },
                        [](const Annulus&) { return std::string_view("Annulus"); },
                        [](const PuncturedDisk&) { return std::string_view("PuncturedDisk"); },
                        [](const ConvexComplement&) { return std::string_view("ConvexComplement"); },
                        [](const Sampled&) { return std::string_view("Sampled"); },
                    },
                    omega.shape);
}

double boundary_distance(const Region& omega, Complex z) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return std::abs(std::abs(z - d.center) - d.radius); },
          [&](const Annulus& a) {
            const double r = std::abs(z - a.center);
            return std::min(std::abs(r - a.r_inner), std::abs(r - a.r_outer));
          },
          [&](const PuncturedDisk& d) {
            const double r = std::abs(z - d.center);
            return std::min(r, std::abs(r - d.radius));
          },
          [&](const ConvexComplement& c) { return std::abs(signed_distance(c.hull, z)); },
          [&](const Sampled& s) { return s.points.empty() ? kInf : std::abs(nearest_probe(s, z) - s.radius); },
      },
      omega.shape);
}

Membership membership(const Region& omega, Complex z) {
  if (omega.boundary_band > 0.0 && boundary_distance(omega, z) <= omega.boundary_band) return Membership::Band;
  return exact_inside(omega, z) ? Membership::Inside : Membership::Outside;
}

bool bounded(const Region& omega) { return !std::holds_alternative<ConvexComplement>(omega.shape); }

bool interior_nonempty(const Region& omega) {
  if (const auto* s = std::get_if<Sampled>(&omega.shape)) return !s->points.empty() && s->radius > 0.0;
  return true;
}

double sup_abs(const Region& omega) {
  return std::visit(Overloaded{
                        [](const Disk& d) { return std::abs(d.center) + d.radius; },
                        [](const Annulus& a) { return std::abs(a.center) + a.r_outer; },
                        [](const PuncturedDisk& d) { return std::abs(d.center) + d.radius; },
                        [](const ConvexComplement&) { return kInf; },
                        [](const Sampled& s) {
                          double best = 0.0;
                          for (const Complex& p : s.points) best = std::max(best, std::abs(p) + s.radius);
                          return best;
                        },
                    },
                    omega.shape);
}

std::pair<Complex, double> interior_point(const Region& omega) {
  return std::visit(
      Overloaded{
          [](const Disk& d) { return std::pair{d.center, d.radius}; },
          [](const Annulus& a) {
            const double mid = 0.5 * (a.r_inner + a.r_outer);
            return std::pair{a.center + mid, 0.5 * (a.r_outer - a.r_inner)};
          },
          [](const PuncturedDisk& d) { return std::pair{d.center + 0.5 * d.radius, 0.5 * d.radius}; },
          [](const ConvexComplement& c) {
            Complex z = std::visit(Overloaded{
                                       [](const DiskSet& k) { return k.center + (2.0 * k.radius + 1.0); },
                                       [](const HalfPlane& h) { return h.normal * (h.offset + 1.0); },
                                       [](const PolygonHull& p) {
                                         double right = -kInf;
                                         double mid = 0.0;
                                         for (const Complex& v : p.vertices) {
                                           if (v.real() > right) {
                                             right = v.real();
                                             mid = v.imag();
                                           }
                                         }
                                         return Complex(right + 1.0, mid);
                                       },
                                   },
                                   c.hull);
            return std::pair{z, signed_distance(c.hull, z)};
          },
          [](const Sampled& s) {
            if (s.points.empty() || !(s.radius > 0.0)) {
              throw Error(ErrorCode::PreconditionViolated, "sampled region has no interior point");
            }
            return std::pair{s.points.front(), s.radius};
          },
      },
      omega.shape);
}

std::pair<Complex, double> sampling_box(const Region& omega) {
  return std::visit(
      Overloaded{
          [](const Disk& d) { return std::pair{d.center, d.radius}; },
          [](const Annulus& a) { return std::pair{a.center, a.r_outer}; },
          [](const PuncturedDisk& d) { return std::pair{d.center, d.radius}; },
          [](const ConvexComplement& c) {
            return std::visit(Overloaded{
                                  [](const DiskSet& k) { return std::pair{k.center, 3.0 * k.radius + 1.0}; },
                                  [](const HalfPlane& h) {
                                    return std::pair{h.normal * h.offset, 2.0 * std::max(1.0, std::abs(h.offset))};
                                  },
                                  [](const PolygonHull& p) {
                                    double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
                                    for (const Complex& v : p.vertices) {
                                      x0 = std::min(x0, v.real());
                                      x1 = std::max(x1, v.real());
                                      y0 = std::min(y0, v.imag());
                                      y1 = std::max(y1, v.imag());
                                    }
                                    const double half = std::max(x1 - x0, y1 - y0);
                                    return std::pair{Complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)), 1.5 * half + 1.0};
                                  },
                              },
                              c.hull);
          },
          [](const Sampled& s) {
            if (s.points.empty()) return std::pair{Complex(0.0), 0.0};
            double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
            for (const Complex& v : s.points) {
              x0 = std::min(x0, v.real());
              x1 = std::max(x1, v.real());
              y0 = std::min(y0, v.imag());
              y1 = std::max(y1, v.imag());
            }
            return std::pair{Complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)),
                             0.5 * std::max(x1 - x0, y1 - y0) + s.radius};
          },
      },
      omega.shape);
}

std::vector<Complex> grid_points(const Region& omega, int g) {
  if (g < 1) throw Error(ErrorCode::InvalidArgument, "grid density must be positive");
  const auto [center, half] = sampling_box(omega);
  std::vector<Complex> out;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      // Cell midpoints, so a symmetric grid never lands on the center itself.
      const double x = -half + (2.0 * i + 1.0) * half / g;
      const double y = -half + (2.0 * j + 1.0) * half / g;
      const Complex z = center + Complex(x, y);
      if (inside(omega, z)) out.push_back(z);
    }
  }
  return out;
}

Region scale_region(const Region& omega, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  RegionShape shape = std::visit(
      Overloaded{
          [&](const Disk& d) -> RegionShape { return Disk{tau * d.center, tau * d.radius, d.closed}; },
          [&](const Annulus& a) -> RegionShape {
            return Annulus{tau * a.center, tau * a.r_inner, tau * a.r_outer, a.closed_inner, a.closed_outer};
          },
          [&](const PuncturedDisk& d) -> RegionShape {
            return PuncturedDisk{tau * d.center, tau * d.radius, d.closed};
          },
          [&](const ConvexComplement& c) -> RegionShape { return ConvexComplement{scaled(c.hull, tau)}; },
          [&](const Sampled& s) -> RegionShape {
            Sampled out{{}, tau * s.radius};
            for (const Complex& p : s.points) out.points.push_back(tau * p);
            return out;
          },
      },
      omega.shape);
  return {std::move(shape), tau * omega.boundary_band};
}

}  // namespace stabil
