#include <doctest.h>

#include <sstream>

#include "stabil/json.hpp"
#include "support/oracles.hpp"

using namespace stabil;

TEST_CASE("polynomial round trip is exact") {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXcd c(1 + t % 9);
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] = uniform_in_disk(rng, 0.0, 1e3);
    const ComplexPoly p(c);
    const ComplexPoly q = parse_json(Json(p).dump()).get<ComplexPoly>();
    CHECK(oracle::rel_err(q, p) == 0.0);
  }
  CHECK(oracle::rel_err(Json::parse(R"({"coeffs": [1, [0, 2]]})").get<ComplexPoly>(), ComplexPoly{1.0, Complex(0.0, 2.0)}) == 0.0);
}

TEST_CASE("regions round trip") {
  const std::vector<Region> regions{
      Region::disk(Complex(0.5, -1.0), 2.0, true, 1e-9),
      Region::annulus(0.0, 1.0, 2.0, true, false),
      Region::punctured_disk(1.0, 0.5),
      Region::convex_complement(make_half_plane(Complex(0.0, 1.0), 0.5)),
      Region::convex_complement(DiskSet{0.0, 1.0}),
      Region::convex_complement(make_polygon_hull(std::vector<Complex>{0.0, 1.0, Complex(0.0, 1.0)})),
      Region::sampled({0.0, Complex(0.3, 0.3)}, 0.1),
  };
  Rng rng(62);
  for (const Region& omega : regions) {
    const Json j = omega;
    const Region back = parse_json(j.dump()).get<Region>();
    CHECK(Json(back) == j);
    for (int k = 0; k < 100; ++k) {
      const Complex z = uniform_in_disk(rng, 0.0, 3.0);
      CHECK(membership(back, z) == membership(omega, z));
    }
  }
}

TEST_CASE("operator round trip") {
  const OperatorTruncation a = make_pcd(ComplexPoly{1.0, Complex(0.0, 0.3)}, ComplexPoly{0.1, 0.7}, 1, 5);
  const OperatorTruncation b = parse_json(Json(a).dump()).get<OperatorTruncation>();
  CHECK(b.matrix() == a.matrix());
}

TEST_CASE("malformed input raises ParseError") {
  CHECK(oracle::error_code_of([] { parse_json("{"); }) == ErrorCode::ParseError);
  CHECK(oracle::error_code_of([] { Json::parse(R"({"kind": "Disk", "center": [0, 0]})").get<Region>(); }) ==
        ErrorCode::ParseError);
  CHECK(oracle::error_code_of([] { Json::parse(R"({"kind": "Blob"})").get<Region>(); }) == ErrorCode::ParseError);
  CHECK(oracle::error_code_of([] { Json::parse(R"({"kind": "Disk", "center": 0, "radius": -1})").get<Region>(); }) ==
        ErrorCode::ParseError);
  CHECK(oracle::error_code_of([] { Json::parse(R"({"N": 2, "columns": [{"coeffs": [1]}]})").get<OperatorTruncation>(); }) ==
        ErrorCode::ParseError);
  CHECK(oracle::error_code_of([] { Json::parse(R"({"coeffs": [[1, 2, 3]]})").get<ComplexPoly>(); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("plain-text signals") {
  std::istringstream in("# header\n1.0\n\n-0.5\n");
  const Signal s = parse_signal_text(in);
  REQUIRE(s.samples.size() == 2);
  CHECK(s.samples[1] == Complex(-0.5));
  std::istringstream bad("1.0 2.0\n");
  CHECK(oracle::error_code_of([&] { parse_signal_text(bad); }) == ErrorCode::ParseError);
}

TEST_CASE("non-finite values serialize as null") {
  CHECK(complex_to_json(Complex(std::numeric_limits<double>::infinity(), 0.0))[0].is_null());
}
