#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stabil/classify.hpp"
#include "stabil/operator.hpp"

namespace stabil {

/// Truncated Taylor coefficients a_0 .. a_L of an H^2 function.
using H2Trunc = ComplexPoly;

/// Causal samples s_0, s_1, ...; its geophysicists' z-transform is sum s_n z^n.
struct Signal {
  std::vector<std::complex<double>> samples;
};

enum class OuterVerdict { Outer, NotOuter, Borderline };

std::string_view to_string(OuterVerdict v);

enum class H2Mode { Outer, Shifted };

std::string_view to_string(H2Mode m);

struct JensenReport {
  OuterVerdict verdict = OuterVerdict::NotOuter;
  /// mean log|f| on |z| = radius minus log|f(0)|; infinite when f(0) = 0.
  double deficit = 0.0;
  /// The same deficit on the smaller circle 1 - 2/K.
  double deficit_inner = 0.0;
  double radius = 0.0;
  int samples = 0;
  int truncation = 0;
  double tol = 0.0;
};

/// Jensen deficit on the circle of radius 1 - 1/K with K trapezoid nodes.
/// Outer when the deficit is at most tol, NotOuter above 10 tol, Borderline
/// between. Zeros in 1 - 1/K < |z| < 1 are not seen at this resolution.
JensenReport jensen_outer_test(const H2Trunc& f, int k = 4096, double tol = 1e-6);

struct RootOuterReport {
  OuterVerdict verdict = OuterVerdict::Outer;
  /// Some root lies within the band of the unit circle.
  bool boundary_roots = false;
  /// Root with |r| < 1 - band when NotOuter, boundary root when flagged.
  std::optional<std::complex<double>> witness;
  int truncation = 0;
};

/// A polynomial is outer iff it has no zeros in the open unit disk. Roots
/// within `band` of the circle count as outer and raise boundary_roots,
/// unless boundary_is_borderline asks for a Borderline verdict instead.
RootOuterReport root_outer_test(const ComplexPoly& p, double band = 1e-9, bool boundary_is_borderline = false);

struct ShiftedOuter {
  int n = 0;
  H2Trunc g;
};

/// Splits f = z^n g after dropping the leading run of coefficients with
/// |a_k| <= tol |a|; returns it when g passes jensen_outer_test.
std::optional<ShiftedOuter> shifted_outer_decompose(const H2Trunc& f, double tol = 1e-6, int k = 4096);

struct MinPhaseReport {
  OuterVerdict verdict = OuterVerdict::NotOuter;
  RootOuterReport roots;
  /// Shift n when the signal is z^n times a minimum-phase one.
  std::optional<int> shift;
};

/// ZeroSignal for an all-zero signal.
MinPhaseReport minimum_phase_test(const Signal& s);

/// nu(f) = sigma f(z0).
struct PointEvaluation {
  std::complex<double> sigma;
  std::complex<double> z0;
};

/// Fits sigma = rho_0, z0 = rho_1 / rho_0 and accepts when
/// |rho_n - sigma z0^n| <= tol |sigma| for all n and |z0| < 1 (and |z0| > tol
/// in shifted mode).
std::optional<PointEvaluation> classify_functional(std::span<const std::complex<double>> rho, H2Mode mode,
                                                   double tol = 1e-10);

struct H2Classification {
  Classification result;
  H2Mode mode = H2Mode::Outer;
  /// Rank-1 operators of the admissible form: A = M_{sigma psi} C_{z0}.
  std::optional<PointEvaluation> point_evaluation;
};

/// Decides whether A preserves outer (or shifted outer) functions at
/// truncation. TruncationTooShallow when N < 2.
H2Classification classify_h2_operator(const OperatorTruncation& a, H2Mode mode, const ClassifyOptions& options = {});

struct ShiftedProductReport {
  bool f_shifted_outer = false;
  bool fg_shifted_outer = false;
  bool g_shifted_outer = false;
  /// f and fg shifted outer while g is not.
  bool violation = false;
};

ShiftedProductReport shifted_product_check(const H2Trunc& f, const H2Trunc& g, double tol = 1e-6);

}  // namespace stabil
