#include "stabil/json.hpp"

#include <cmath>
#include <sstream>

#include "stabil/overloaded.hpp"

namespace stabil {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) fail(std::string("expected an object holding \"") + name + "\"");
  const auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number()) fail(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* name, double fallback) {
  return j.contains(name) ? number(j, name) : fallback;
}

bool flag_or(const Json& j, const char* name, bool fallback) {
  if (!j.contains(name)) return fallback;
  if (!j[name].is_boolean()) fail(std::string("field \"") + name + "\" must be a boolean");
  return j[name].get<bool>();
}

std::vector<Complex> complex_list(const Json& j) {
  if (!j.is_array()) fail("expected an array of complex numbers");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const Json& z : j) out.push_back(complex_from_json(z));
  return out;
}

Json complex_list_json(std::span<const Complex> zs) {
  Json out = Json::array();
  for (const Complex& z : zs) out.push_back(complex_to_json(z));
  return out;
}

// Non-finite values become null.
Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json convex_to_json(const ConvexSet& set) {
  return std::visit(Overloaded{
                        [](const DiskSet& d) {
                          return Json{{"type", "Disk"}, {"center", complex_to_json(d.center)}, {"radius", d.radius}};
                        },
                        [](const HalfPlane& h) {
                          return Json{{"type", "HalfPlane"}, {"normal", complex_to_json(h.normal)}, {"offset", h.offset}};
                        },
                        [](const PolygonHull& p) {
                          return Json{{"type", "Polygon"}, {"vertices", complex_list_json(p.vertices)}};
                        },
                    },
                    set);
}

ConvexSet convex_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (type == "Disk") return DiskSet{complex_from_json(field(j, "center")), number(j, "radius")};
  if (type == "HalfPlane") return make_half_plane(complex_from_json(field(j, "normal")), number(j, "offset"));
  if (type == "Polygon") {
    const std::vector<Complex> vertices = complex_list(field(j, "vertices"));
    if (vertices.empty()) fail("polygon hull needs at least one vertex");
    return make_polygon_hull(vertices);
  }
  fail("unknown convex set type " + type.dump());
}

}  // namespace

Json complex_to_json(std::complex<double> z) { return Json::array({real(z.real()), real(z.imag())}); }

std::complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("complex numbers are [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void to_json(Json& j, const ComplexPoly& p) {
  j = Json{{"coeffs", complex_list_json(std::span(p.coeffs().data(), static_cast<std::size_t>(p.size())))}};
}

void from_json(const Json& j, ComplexPoly& p) {
  const std::vector<Complex> c = complex_list(field(j, "coeffs"));
  if (c.empty()) fail("a polynomial needs at least one coefficient");
  p = ComplexPoly(Eigen::Map<const Eigen::VectorXcd>(c.data(), static_cast<Eigen::Index>(c.size())));
}

void to_json(Json& j, const Region& omega) {
  j = std::visit(Overloaded{
                     [](const Disk& d) {
                       return Json{{"center", complex_to_json(d.center)}, {"radius", d.radius}, {"closed", d.closed}};
                     },
                     [](const Annulus& a) {
                       return Json{{"center", complex_to_json(a.center)},
                                   {"r_inner", a.r_inner},
                                   {"r_outer", a.r_outer},
                                   {"closed_inner", a.closed_inner},
                                   {"closed_outer", a.closed_outer}};
                     },
                     [](const PuncturedDisk& d) {
                       return Json{{"center", complex_to_json(d.center)}, {"radius", d.radius}, {"closed", d.closed}};
                     },
                     [](const ConvexComplement& c) { return Json{{"hull", convex_to_json(c.hull)}}; },
                     [](const Sampled& s) { return Json{{"points", complex_list_json(s.points)}, {"radius", s.radius}}; },
                 },
                 omega.shape);
  j["kind"] = kind(omega);
  j["boundary_band"] = omega.boundary_band;
}

void from_json(const Json& j, Region& omega) {
  const Json& k = field(j, "kind");
  const double band = number_or(j, "boundary_band", 0.0);
  if (band < 0.0) fail("boundary_band must be nonnegative");
  try {
    if (k == "Disk") {
      omega = Region::disk(complex_from_json(field(j, "center")), number(j, "radius"), flag_or(j, "closed", false), band);
    } else if (k == "Annulus") {
      omega = Region::annulus(complex_from_json(field(j, "center")), number(j, "r_inner"), number(j, "r_outer"),
                              flag_or(j, "closed_inner", false), flag_or(j, "closed_outer", false), band);
    } else if (k == "PuncturedDisk") {
      omega = Region::punctured_disk(complex_from_json(field(j, "center")), number(j, "radius"),
                                     flag_or(j, "closed", false), band);
    } else if (k == "ConvexComplement") {
      omega = Region::convex_complement(convex_from_json(field(j, "hull")), band);
    } else if (k == "Sampled") {
      omega = Region::sampled(complex_list(field(j, "points")), number(j, "radius"), band);
    } else {
      fail("unknown region kind " + k.dump());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(std::string("invalid region: ") + e.what());
  }
}

void to_json(Json& j, const OperatorTruncation& a) {
  Json columns = Json::array();
  for (int n = 0; n <= a.source_degree(); ++n) columns.push_back(compact(a.column(n)));
  j = Json{{"N", a.source_degree()}, {"columns", columns}};
}

void from_json(const Json& j, OperatorTruncation& a) {
  const Json& n = field(j, "N");
  if (!n.is_number_integer() || n.get<int>() < 0) fail("\"N\" must be a nonnegative integer");
  const Json& cols = field(j, "columns");
  if (!cols.is_array() || cols.size() != static_cast<std::size_t>(n.get<int>()) + 1) {
    fail("an operator with N = " + n.dump() + " needs N + 1 columns");
  }
  std::vector<ComplexPoly> columns;
  for (const Json& c : cols) columns.push_back(c.get<ComplexPoly>());
  a = OperatorTruncation::from_columns(columns);
}

void to_json(Json& j, const Signal& s) { j = Json{{"samples", complex_list_json(s.samples)}}; }

void from_json(const Json& j, Signal& s) { s.samples = complex_list(field(j, "samples")); }

Signal parse_signal_text(std::istream& in) {
  Signal s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double x = 0.0;
    std::string rest;
    if (!(row >> x) || (row >> rest)) fail("line " + std::to_string(lineno) + ": expected one real sample");
    s.samples.emplace_back(x, 0.0);
  }
  if (s.samples.empty()) fail("signal has no samples");
  return s;
}

void to_json(Json& j, const StabilityResult& r) {
  j = Json{{"verdict", to_string(r.status)}, {"degree", r.roots.total_multiplicity()}};
  Json roots = Json::array();
  for (const Root& root : r.roots.roots) {
    roots.push_back(Json{{"value", complex_to_json(root.value)}, {"multiplicity", root.multiplicity}});
  }
  j["roots"] = roots;
  j["residual"] = real(r.roots.residual);
  if (r.witness) {
    j["witness"] = complex_to_json(*r.witness);
    j["witness_uncertainty"] = real(r.witness_uncertainty);
  }
}

void to_json(Json& j, const Witness& w) {
  j = Json{{"p", w.p}, {"image", compact(w.image)}, {"image_root", complex_to_json(w.image_root)}};
}

void to_json(Json& j, const Classification& c) {
  j = Json{{"verdict", to_string(c.verdict)}, {"rank", c.rank}, {"report", c.report}};
  if (c.verdict == Verdict::Rank1) j["nu"] = complex_list_json(c.nu);
  if (c.verdict == Verdict::Rank1 || c.verdict == Verdict::ProductComposition) j["psi"] = compact(c.psi);
  if (c.verdict == Verdict::ProductComposition) j["phi"] = compact(c.phi);
  Json residuals = Json::array();
  for (double r : c.residuals) residuals.push_back(real(r));
  j["residuals"] = residuals;
  if (c.map_verdict) j["map_verdict"] = to_string(*c.map_verdict);
  if (c.witness) j["witness"] = *c.witness;
}

void to_json(Json& j, const JensenReport& r) {
  j = Json{{"verdict", to_string(r.verdict)},   {"deficit", real(r.deficit)},
           {"deficit_inner", real(r.deficit_inner)}, {"radius", r.radius},
           {"samples", r.samples},             {"truncation", r.truncation},
           {"tol", r.tol}};
}

void to_json(Json& j, const RootOuterReport& r) {
  j = Json{{"verdict", to_string(r.verdict)}, {"boundary_roots", r.boundary_roots}, {"truncation", r.truncation}};
  if (r.witness) j["witness"] = complex_to_json(*r.witness);
}

void to_json(Json& j, const MinPhaseReport& r) {
  j = Json{{"verdict", to_string(r.verdict)}, {"roots", r.roots}};
  if (r.shift) j["shift"] = *r.shift;
}

void to_json(Json& j, const H2Classification& c) {
  to_json(j, c.result);
  j["mode"] = to_string(c.mode);
  if (c.point_evaluation) {
    j["sigma"] = complex_to_json(c.point_evaluation->sigma);
    j["z0"] = complex_to_json(c.point_evaluation->z0);
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace stabil
