#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stabil/json.hpp"
#include "stabil/selfcheck.hpp"

using namespace stabil;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kUndecided = 2;
constexpr int kUsage = 3;

struct Settings {
  double tol = 1e-8;
  int budget = 10000;
  std::uint64_t seed = 0;
  int grid = 64;
  int truncation = 8;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class T>
T load(const std::string& path) {
  const Json j = parse_json(slurp(path));
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Complex parse_complex(const std::string& text) {
  return complex_from_json(parse_json(text));
}

int emit(const Json& payload, int code) {
  std::cout << payload.dump(2) << '\n';
  return code;
}

int classification_exit(Verdict v) {
  switch (v) {
    case Verdict::Rank1:
    case Verdict::ProductComposition: return kPositive;
    case Verdict::NotPreserving: return kNegative;
    case Verdict::Inconclusive: return kUndecided;
  }
  return kUndecided;
}

int outer_exit(OuterVerdict v) {
  switch (v) {
    case OuterVerdict::Outer: return kPositive;
    case OuterVerdict::NotOuter: return kNegative;
    case OuterVerdict::Borderline: return kUndecided;
  }
  return kUndecided;
}

ClassifyOptions options_from(const Settings& s) { return ClassifyOptions{s.tol, s.budget, s.seed, s.grid}; }

int cmd_stable(const std::string& poly_file, const std::string& region_file) {
  const StabilityResult r = is_stable(load<ComplexPoly>(poly_file), load<Region>(region_file));
  switch (r.status) {
    case Stability::Stable: return emit(r, kPositive);
    case Stability::Unstable: return emit(r, kNegative);
    default: return emit(r, kUndecided);
  }
}

int cmd_classify(const std::string& op, const std::string& r1, const std::string& r2, const Settings& s) {
  const Classification c = classify(load<OperatorTruncation>(op), load<Region>(r1), load<Region>(r2), options_from(s));
  return emit(c, classification_exit(c.verdict));
}

int cmd_falsify(const std::string& op, const std::string& r1, const std::string& r2, const Settings& s) {
  const auto w = falsify(load<OperatorTruncation>(op), load<Region>(r1), load<Region>(r2), s.budget, s.seed);
  if (!w) return emit(Json{{"verdict", "Inconclusive"}, {"budget", s.budget}}, kUndecided);
  return emit(Json{{"verdict", "NotPreserving"}, {"witness", *w}}, kNegative);
}

int cmd_apply(const std::string& op, const std::string& poly) {
  return emit(compact(stabil::apply(load<OperatorTruncation>(op), load<ComplexPoly>(poly))), kPositive);
}

int cmd_outer(const std::string& file, double tol, int samples) {
  const ComplexPoly f = load<ComplexPoly>(file);
  const JensenReport jensen = jensen_outer_test(f, samples, tol);
  Json payload = jensen;
  if (f.degree() >= 1) {
    payload["roots"] = root_outer_test(f);
  }
  if (auto shifted = shifted_outer_decompose(f, tol, samples)) payload["shift"] = shifted->n;
  return emit(payload, outer_exit(jensen.verdict));
}

int cmd_minphase(const std::string& file) {
  const std::string text = slurp(file);
  const auto first = text.find_first_not_of(" \t\r\n");
  Signal signal;
  if (first != std::string::npos && text[first] == '{') {
    signal = parse_json(text).get<Signal>();
  } else {
    std::istringstream in(text);
    signal = parse_signal_text(in);
  }
  const MinPhaseReport r = minimum_phase_test(signal);
  return emit(r, outer_exit(r.verdict));
}

int cmd_classify_h2(const std::string& op, const std::string& mode, const Settings& s) {
  const H2Mode m = mode == "shifted" ? H2Mode::Shifted : H2Mode::Outer;
  const H2Classification c = classify_h2_operator(load<OperatorTruncation>(op), m, options_from(s));
  return emit(c, classification_exit(c.result.verdict));
}

int cmd_selfcheck(const std::string& level, const Settings& s) {
  const auto suites = run_selfcheck(level == "full" ? CheckLevel::Full : CheckLevel::Fast, s.seed);
  Json list = Json::array();
  std::string first_failure;
  for (const SuiteResult& r : suites) {
    list.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"seconds", r.seconds},
                        {"detail", r.detail}});
    if (!r.passed && first_failure.empty()) first_failure = r.name;
  }
  Json payload{{"level", level}, {"passed", first_failure.empty()}, {"suites", list}};
  if (!first_failure.empty()) {
    payload["first_failure"] = first_failure;
    std::cerr << "selfcheck: suite " << first_failure << " failed\n";
    return emit(payload, kNegative);
  }
  return emit(payload, kPositive);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability-preserving operators on polynomial truncations"};
  app.require_subcommand(1);
  Settings s;
  if (const char* env = std::getenv("STABIL_DEFAULT_TOL")) {
    try {
      s.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "STABIL_DEFAULT_TOL is not a number: " << env << '\n';
      return kUsage;
    }
  }
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", s.tol, "Relative tolerance")->capture_default_str();
    cmd->add_option("--budget", s.budget, "Falsification draws")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", s.seed, "Random seed");
    cmd->add_option("--grid", s.grid, "Grid density")->check(CLI::PositiveNumber);
  };

  std::string poly, region, op, r1, r2, file, mode = "outer", level = "fast";
  std::function<int()> run;

  auto* stable = app.add_subcommand("stable", "Root location of a polynomial against a region");
  stable->add_option("poly", poly)->required();
  stable->add_option("region", region)->required();
  stable->callback([&] { run = [&] { return cmd_stable(poly, region); }; });

  auto* cls = app.add_subcommand("classify", "Classify an operator truncation");
  cls->add_option("operator", op)->required();
  cls->add_option("omega1", r1)->required();
  cls->add_option("omega2", r2)->required();
  add_common(cls);
  cls->callback([&] { run = [&] { return cmd_classify(op, r1, r2, s); }; });

  auto* fal = app.add_subcommand("falsify", "Search for a stability-violation witness");
  fal->add_option("operator", op)->required();
  fal->add_option("omega1", r1)->required();
  fal->add_option("omega2", r2)->required();
  add_common(fal);
  fal->callback([&] { run = [&] { return cmd_falsify(op, r1, r2, s); }; });

  auto* app_cmd = app.add_subcommand("apply", "Apply an operator to a polynomial");
  app_cmd->add_option("operator", op)->required();
  app_cmd->add_option("poly", poly)->required();
  app_cmd->callback([&] { run = [&] { return cmd_apply(op, poly); }; });

  auto* make = app.add_subcommand("make", "Construct an operator truncation");
  make->require_subcommand(1);
  std::string psi_file, phi_file, nu_file, tau = "1";
  int order = 1;
  auto* make_pc = make->add_subcommand("pc", "psi * (f o phi)");
  auto* sub_rank1 = make->add_subcommand("rank1", "nu(f) psi");
  auto* make_dil = make->add_subcommand("dilation", "f(tau z)");
  auto* sub_pcd = make->add_subcommand("pcd", "psi * (D^order f) o phi");
  auto* make_id = make->add_subcommand("identity", "f");
  for (auto* cmd : {make_pc, sub_rank1, make_dil, sub_pcd, make_id}) {
    cmd->add_option("--truncation,-N", s.truncation, "Source degree N")->check(CLI::NonNegativeNumber);
  }
  for (auto* cmd : {make_pc, sub_rank1, sub_pcd}) cmd->add_option("--psi", psi_file, "psi polynomial file")->required();
  for (auto* cmd : {make_pc, sub_pcd}) cmd->add_option("--phi", phi_file, "phi polynomial file")->required();
  sub_rank1->add_option("--nu", nu_file, "JSON file {\"nu\": [[re, im], ...]} with N + 1 entries")->required();
  make_dil->add_option("--tau", tau, "tau as a JSON number or [re, im]");
  sub_pcd->add_option("--order", order, "Derivative order")->check(CLI::NonNegativeNumber);
  make_pc->callback([&] {
    run = [&] {
      return emit(make_product_composition(load<ComplexPoly>(psi_file), load<ComplexPoly>(phi_file), s.truncation),
                  kPositive);
    };
  });
  sub_rank1->callback([&] {
    run = [&] {
      const Json j = parse_json(slurp(nu_file));
      if (!j.is_object() || !j.contains("nu") || !j["nu"].is_array()) {
        throw Error(ErrorCode::ParseError, nu_file + ": expected {\"nu\": [...]}");
      }
      std::vector<Complex> nu;
      for (const Json& x : j["nu"]) nu.push_back(complex_from_json(x));
      return emit(make_rank1(nu, load<ComplexPoly>(psi_file), s.truncation), kPositive);
    };
  });
  make_dil->callback([&] { run = [&] { return emit(make_dilation(parse_complex(tau), s.truncation), kPositive); }; });
  sub_pcd->callback([&] {
    run = [&] {
      return emit(make_pcd(load<ComplexPoly>(psi_file), load<ComplexPoly>(phi_file), order, s.truncation), kPositive);
    };
  });
  make_id->callback([&] { run = [&] { return emit(identity_operator(s.truncation), kPositive); }; });

  auto* minphase = app.add_subcommand("minphase", "Minimum-phase test of a causal signal");
  minphase->add_option("signal", file, "JSON {\"samples\": ...} or one real sample per line")->required();
  minphase->callback([&] { run = [&] { return cmd_minphase(file); }; });

  double outer_tol = 1e-6;
  int samples = 4096;
  auto* outer = app.add_subcommand("outer", "Jensen and root tests for an H^2 truncation");
  outer->add_option("h2", file, "Polynomial file with Taylor coefficients")->required();
  outer->add_option("--tol", outer_tol, "Jensen deficit tolerance")->capture_default_str();
  outer->add_option("--samples", samples, "Circle nodes K")->capture_default_str();
  outer->callback([&] { run = [&] { return cmd_outer(file, outer_tol, samples); }; });

  auto* h2 = app.add_subcommand("classify-h2", "Classify an operator preserving outer functions");
  h2->add_option("operator", op)->required();
  h2->add_option("--mode", mode)->check(CLI::IsMember({"outer", "shifted"}))->capture_default_str();
  add_common(h2);
  h2->callback([&] { run = [&] { return cmd_classify_h2(op, mode, s); }; });

  auto* self = app.add_subcommand("selfcheck", "Run the invariant suites");
  self->add_option("--level", level)->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  self->add_option("--seed", s.seed, "Random seed");
  self->callback([&] { run = [&] { return cmd_selfcheck(level, s); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run();
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    emit(Json{{"error", to_string(e.code())}, {"message", e.what()}}, kUsage);
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    emit(Json{{"error", "InvalidArgument"}, {"message", e.what()}}, kUsage);
    return kUsage;
  }
}
