// Command-line front end: certify individual points, tabulate invariants over
// a chart rectangle, inspect the order-60 tessellation, and emit the
// certificate for the complete hyperbolic point.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <projorb/projorb.hpp>

using nlohmann::ordered_json;
using projorb::Rat;

namespace {

struct Options {
  bool json = false;
  std::string backend;  // "", "rational" or "float"
};

enum class PointKind { Wxyz, Chart, Affine };

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// integers and p/q fractions stay exact; a decimal point or exponent means
// the user is thinking in floating point
bool tokens_are_exact(const std::vector<std::string>& tokens) {
  for (const auto& t : tokens)
    for (char ch : t)
      if (ch == '.' || ch == 'e' || ch == 'E') return false;
  return true;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const Rat& v) { return projorb::to_string(v); }

ordered_json to_json_value(double v) { return v; }
ordered_json to_json_value(const Rat& v) { return projorb::to_string(v); }

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | skip
  std::string detail;
};

class CheckList {
 public:
  void pass(const std::string& name, const std::string& detail = "") {
    add(name, "pass", detail);
  }
  void fail(const std::string& name, const std::string& detail = "") {
    add(name, "fail", detail);
    failed_ = true;
  }
  void skip(const std::string& name, const std::string& detail = "") {
    add(name, "skip", detail);
  }
  void require(bool ok, const std::string& name, const std::string& detail = "") {
    ok ? pass(name, detail) : fail(name, detail);
  }

  bool all_passed() const { return !failed_; }
  const std::vector<CheckResult>& results() const { return results_; }

  void print_text() const {
    for (const auto& c : results_) {
      std::cout << "  [" << c.status << "] " << c.name;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
      std::cout << "\n";
    }
    std::cout << "overall: " << (failed_ ? "FAIL" : "PASS") << "\n";
  }

  ordered_json to_json() const {
    ordered_json arr = ordered_json::array();
    for (const auto& c : results_) {
      ordered_json entry;
      entry["name"] = c.name;
      entry["status"] = c.status;
      if (!c.detail.empty()) entry["detail"] = c.detail;
      arr.push_back(entry);
    }
    return arr;
  }

 private:
  void add(std::string name, std::string status, std::string detail) {
    results_.push_back({std::move(name), std::move(status), std::move(detail)});
  }
  std::vector<CheckResult> results_;
  bool failed_ = false;
};

// ---------------------------------------------------------------- verify ---

template <class T>
int run_verify(PointKind kind, const std::vector<T>& vals, const Options& opt,
               const char* backend_name) {
  using namespace projorb;

  std::optional<TraceCoords<T>> t;
  std::optional<AffineParams<T>> params;
  std::string lift_error;

  try {
    switch (kind) {
      case PointKind::Wxyz:
        t = TraceCoords<T>{vals[0], vals[1], vals[2], vals[3]};
        break;
      case PointKind::Chart:
        t = chart_lift(ChartPoint<T>{vals[0], vals[1]}).t;
        break;
      case PointKind::Affine:
        params = AffineParams<T>{vals[0], vals[1], vals[2], vals[3]};
        t = trace_coords(*params);
        break;
    }
  } catch (const error& e) {
    if (opt.json) {
      ordered_json j;
      j["command"] = "verify";
      j["backend"] = backend_name;
      j["error"] = e.what();
      j["overall"] = "fail";
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }

  if (!params) {
    try {
      params = lift_to_affine(*t);
    } catch (const error& e) {
      lift_error = e.what();
    }
  }

  CheckList checks;

  bool variety_ok = on_variety(*t);
  checks.require(variety_ok, "on trace variety");

  std::optional<Representation<T>> rep;
  if (params) rep = build_representation(*params);

  const std::string no_rep = "no affine lift: " + lift_error;
  if (!rep) {
    checks.skip("parameter relation", no_rep);
    checks.skip("generator relations", no_rep);
    checks.skip("cross-ratio coordinates", no_rep);
    checks.skip("axis injectivity", no_rep);
    checks.skip("edge cycle degree", no_rep);
  } else {
    checks.require(rep->on_relation, "parameter relation",
                   "defect = " + fmt(relation_defect(rep->params)));

    auto rel = verify_relations(*rep);
    checks.require(rel.all(), "generator relations",
                   rel.all() ? "A^3 = B^3 = C^3 = 1" : "some generator cube is not the identity");

    try {
      TraceCoords<T> cr = cross_ratio_coords(*rep);
      bool agree = approx_eq(cr.w, t->w) && approx_eq(cr.x, t->x) && approx_eq(cr.y, t->y) &&
                   approx_eq(cr.z, t->z);
      checks.require(agree, "cross-ratio coordinates",
                     agree ? "agree with trace coordinates" : "disagree with trace coordinates");
    } catch (const error& e) {
      checks.fail("cross-ratio coordinates", e.what());
    }

    auto axes = axis_injectivity(rep->params);
    checks.require(axes.a_axis && axes.b_axis, "axis injectivity",
                   axes.a_axis ? (axes.b_axis ? "" : "b-axis fails") : "a-axis fails");

    try {
      int degree = edge_degree(*rep);
      checks.require(degree == 1, "edge cycle degree", "degree = " + std::to_string(degree));
    } catch (const error& e) {
      checks.fail("edge cycle degree", e.what());
    }
  }

  const std::string off_variety = "point is off the trace variety";
  std::optional<std::string> component_str, cusp_str, disc_str;
  ordered_json disc_json;

  if (!variety_ok) {
    checks.skip("component", off_variety);
    checks.skip("cusp type", off_variety);
    checks.skip("discriminant", off_variety);
  } else {
    try {
      Component comp = classify_component(*t);
      component_str = component_name(comp);
      checks.require(comp == Component::X, "component", *component_str);
    } catch (const error& e) {
      checks.fail("component", e.what());
    }

    try {
      auto report = cusp_type(*t);
      cusp_str = cusp_type_name(report.type);
      checks.require(report.type != CuspType::OffComponent, "cusp type", *cusp_str);
    } catch (const error& e) {
      checks.fail("cusp type", e.what());
    }

    try {
      auto abc = abc_coords(moduli_point(*t));
      T d = disc(abc.a, abc.c);
      disc_str = fmt(d);
      disc_json = to_json_value(d);
      checks.require(d >= T(0), "discriminant", "disc = " + *disc_str);
    } catch (const error& e) {
      checks.fail("discriminant", e.what());
    }
  }

  if (opt.json) {
    ordered_json j;
    j["command"] = "verify";
    j["backend"] = backend_name;
    {
      ordered_json p;
      p["w"] = to_json_value(t->w);
      p["x"] = to_json_value(t->x);
      p["y"] = to_json_value(t->y);
      p["z"] = to_json_value(t->z);
      j["point"] = p;
    }
    if (params) {
      ordered_json p;
      p["a1"] = to_json_value(params->a1);
      p["a2"] = to_json_value(params->a2);
      p["b3"] = to_json_value(params->b3);
      p["b4"] = to_json_value(params->b4);
      j["affine"] = p;
    }
    if (component_str) j["component"] = *component_str;
    if (cusp_str) j["cusp"] = *cusp_str;
    if (disc_str) j["disc"] = disc_json;
    j["checks"] = checks.to_json();
    j["overall"] = checks.all_passed() ? "pass" : "fail";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "point: w=" << fmt(t->w) << " x=" << fmt(t->x) << " y=" << fmt(t->y)
              << " z=" << fmt(t->z) << " (backend: " << backend_name << ")\n";
    checks.print_text();
  }
  return checks.all_passed() ? 0 : 1;
}

// ------------------------------------------------------------------ scan ---

struct Range {
  double lo = 0, hi = 0;
};

bool parse_range(const std::string& s, Range& r) {
  auto parts = split(s, ':');
  if (parts.size() != 2) return false;
  try {
    r.lo = projorb::to_double(projorb::rat_from_string(parts[0]));
    r.hi = projorb::to_double(projorb::rat_from_string(parts[1]));
  } catch (const projorb::error&) {
    return false;
  }
  return true;
}

double grid_coord(const Range& r, int i, int steps) {
  return steps == 1 ? r.lo : r.lo + (r.hi - r.lo) * i / (steps - 1);
}

int run_scan(const Range& xr, const Range& yr, int steps, const std::string& out_path,
             const Options& opt) {
  using namespace projorb;

  std::FILE* f = stdout;
  if (!out_path.empty()) {
    f = std::fopen(out_path.c_str(), "wb");
    if (!f) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return 3;
    }
  }

  ordered_json rows = ordered_json::array();
  if (!opt.json) std::fprintf(f, "x,y,w,z,component,disc,degree,cusp,lambda1,lambda2,lambda3\n");

  for (int i = 0; i < steps; ++i) {
    double x = grid_coord(xr, i, steps);
    for (int j = 0; j < steps; ++j) {
      double y = grid_coord(yr, j, steps);
      std::string skip_reason;
      if (std::abs(x + y - x * y) < 1e-12) {
        skip_reason = "chart singular locus";
      } else {
        try {
          auto mp = chart_lift(ChartPoint<double>{x, y});
          auto r = build_representation(lift_to_affine(mp.t));
          int degree = edge_degree(r);
          auto cubic = ac_char_poly_formula(mp.t);
          auto report = cusp_type(mp.t);
          double d = closed_form_discriminant(ChartPoint<double>{x, y});
          auto roots = cubic_real_roots(cubic[1], cubic[2], cubic[3]);
          if (roots.size() != 3) throw error("peripheral spectrum is not fully real");
          if (opt.json) {
            ordered_json row;
            row["x"] = x;
            row["y"] = y;
            row["w"] = mp.t.w;
            row["z"] = mp.t.z;
            row["component"] = component_name(mp.component);
            row["disc"] = d;
            row["degree"] = degree;
            row["cusp"] = cusp_type_name(report.type);
            row["lambda1"] = roots[2];
            row["lambda2"] = roots[1];
            row["lambda3"] = roots[0];
            rows.push_back(row);
          } else {
            std::fprintf(f, "%s,%s,%s,%s,%s,%s,%d,%s,%s,%s,%s\n", fmt(x).c_str(), fmt(y).c_str(),
                         fmt(mp.t.w).c_str(), fmt(mp.t.z).c_str(), component_name(mp.component),
                         fmt(d).c_str(), degree, cusp_type_name(report.type), fmt(roots[2]).c_str(),
                         fmt(roots[1]).c_str(), fmt(roots[0]).c_str());
          }
        } catch (const error& e) {
          skip_reason = e.what();
        }
      }
      if (!skip_reason.empty() && !opt.json)
        std::fprintf(f, "# skipped x=%s y=%s (%s)\n", fmt(x).c_str(), fmt(y).c_str(),
                     skip_reason.c_str());
    }
  }

  if (opt.json) {
    ordered_json j;
    j["command"] = "scan";
    j["rows"] = rows;
    std::string text = j.dump(2) + "\n";
    std::fputs(text.c_str(), f);
  }
  if (f != stdout) std::fclose(f);
  return 0;
}

// ------------------------------------------------------------------ alt5 ---

int run_alt5(const Options& opt) {
  using namespace projorb;
  auto r = build_representation(AffineParams<Rat>{1, 1, 1, 1});
  // corruption hook so callers can exercise the failure path
  if (std::getenv("PROJORB_TEST_MUTATE_ALT5")) r.A(0, 3) += 1;

  try {
    auto report = alt5_analysis(r);
    bool matches = report.group_order == 60 && report.orbit_size == 15 &&
                   report.stabilizer_size == 4 && report.adjacent_a_axis == 3 &&
                   report.adjacent_b_axis == 3 && report.adjacent_c_axis == 6;
    if (opt.json) {
      ordered_json j;
      j["command"] = "alt5";
      j["group_order"] = report.group_order;
      j["orbit_size"] = report.orbit_size;
      j["stabilizer_size"] = report.stabilizer_size;
      j["adjacent_a_axis"] = report.adjacent_a_axis;
      j["adjacent_b_axis"] = report.adjacent_b_axis;
      j["adjacent_c_axis"] = report.adjacent_c_axis;
      j["overall"] = matches ? "pass" : "fail";
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "group order: " << report.group_order << "\n"
                << "simplex orbit size: " << report.orbit_size << "\n"
                << "simplex stabilizer order: " << report.stabilizer_size << "\n"
                << "simplices at the a-axis edge: " << report.adjacent_a_axis << "\n"
                << "simplices at the b-axis edge: " << report.adjacent_b_axis << "\n"
                << "simplices at the c-axis edge: " << report.adjacent_c_axis << "\n"
                << "overall: " << (matches ? "PASS" : "FAIL") << "\n";
    }
    return matches ? 0 : 1;
  } catch (const error& e) {
    if (opt.json) {
      ordered_json j;
      j["command"] = "alt5";
      j["error"] = e.what();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
}

// ------------------------------------------------------- cert-hyperbolic ---

int run_cert_hyperbolic(const Options& opt) {
  using namespace projorb;
  using T = Rat;

  CheckList checks;
  TraceCoords<T> t{3, 3, 3, 3};

  auto fixed = fixed_points_of_involution<T>();
  int x_count = 0;
  bool is_hyp_point = false;
  for (const auto& mp : fixed)
    if (mp.component == Component::X) {
      ++x_count;
      is_hyp_point = mp.t.w == t.w && mp.t.x == t.x && mp.t.y == t.y && mp.t.z == t.z;
    }
  checks.require(x_count == 1 && is_hyp_point, "unique involution-fixed point on component X",
                 "(w,x,y,z) = (3,3,3,3)");

  auto rep = build_representation(lift_to_affine(t));

  auto near_end = cusp_type(t);
  bool unit_spectrum = near_end.eigenvalues.size() == 4;
  for (double lam : near_end.eigenvalues) unit_spectrum = unit_spectrum && std::abs(lam - 1) < 1e-9;
  checks.require(near_end.type == CuspType::Standard && unit_spectrum, "standard cusp at end v1",
                 std::string(cusp_type_name(near_end.type)) + ", eigenvalues all 1");

  auto far_end = peripheral_cusp_report(rep.B * rep.B * rep.C, Component::X);
  checks.require(far_end.type == CuspType::Standard, "standard cusp at end v4",
                 cusp_type_name(far_end.type));

  auto forms = invariant_symmetric_form(std::vector<Mat4<T>>{rep.A, rep.B});
  bool lorentzian = forms.dimension() == 1 && forms.unique.has_value() &&
                    forms.unique->sig == Signature{3, 1, 0};
  checks.require(lorentzian, "invariant form of signature (3,1)",
                 "solution space dimension " + std::to_string(forms.dimension()));

  try {
    int degree = edge_degree(rep);
    checks.require(degree == 1, "edge cycle degree", "degree = " + std::to_string(degree));
  } catch (const error& e) {
    checks.fail("edge cycle degree", e.what());
  }

  if (opt.json) {
    ordered_json j;
    j["command"] = "cert-hyperbolic";
    j["point"] = {{"w", "3"}, {"x", "3"}, {"y", "3"}, {"z", "3"}};
    j["checks"] = checks.to_json();
    j["overall"] = checks.all_passed() ? "pass" : "fail";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "certificate at the point (w,x,y,z) = (3,3,3,3)\n";
    checks.print_text();
  }
  return checks.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moduli of real projective structures on a two-cusped orbifold"};
  app.require_subcommand(1);

  Options opt;
  double tolerance = 0;
  app.add_flag("--json", opt.json, "emit JSON instead of text");
  app.add_option("--tolerance", tolerance, "relative tolerance for the float backend")
      ->check(CLI::PositiveNumber);
  app.add_option("--backend", opt.backend, "force the scalar backend")
      ->check(CLI::IsMember({"rational", "float"}));

  auto* verify = app.add_subcommand("verify", "run the structure checks at one point");
  std::string wxyz_arg, chart_arg, affine_arg;
  verify->add_option("--wxyz", wxyz_arg, "trace coordinates w,x,y,z");
  verify->add_option("--chart", chart_arg, "chart coordinates x,y");
  verify->add_option("--affine", affine_arg, "affine parameters a1,a2,b3,b4");

  auto* scan = app.add_subcommand("scan", "tabulate invariants over a chart rectangle (CSV)");
  std::string x_arg = "2:4", y_arg = "2:4", out_arg;
  int steps = 10;
  scan->add_option("--x", x_arg, "x range lo:hi");
  scan->add_option("--y", y_arg, "y range lo:hi");
  scan->add_option("--steps", steps, "grid steps per axis")->check(CLI::PositiveNumber);
  scan->add_option("--out", out_arg, "output file (default stdout)");

  auto* alt5 = app.add_subcommand("alt5", "analyze the order-60 tessellation at (1,1,1,1)");
  auto* cert = app.add_subcommand(
      "cert-hyperbolic", "emit the certificate for the point (3,3,3,3)");
  for (auto* sub : {verify, scan, alt5, cert}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (tolerance > 0) projorb::float_tolerance() = tolerance;

  try {
    if (*verify) {
      int given = (!wxyz_arg.empty()) + (!chart_arg.empty()) + (!affine_arg.empty());
      if (given != 1) {
        std::cerr << "error: give exactly one of --wxyz, --chart, --affine\n";
        return 2;
      }
      PointKind kind = !wxyz_arg.empty()   ? PointKind::Wxyz
                       : !chart_arg.empty() ? PointKind::Chart
                                            : PointKind::Affine;
      const std::string& arg =
          !wxyz_arg.empty() ? wxyz_arg : !chart_arg.empty() ? chart_arg : affine_arg;
      auto tokens = split(arg, ',');
      std::size_t want = kind == PointKind::Chart ? 2 : 4;
      if (tokens.size() != want) {
        std::cerr << "error: expected " << want << " comma-separated values, got "
                  << tokens.size() << "\n";
        return 2;
      }

      std::vector<Rat> exact;
      try {
        for (const auto& tok : tokens) exact.push_back(projorb::rat_from_string(tok));
      } catch (const projorb::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }

      bool use_exact = opt.backend == "rational" ||
                       (opt.backend.empty() && tokens_are_exact(tokens));
      if (use_exact) return run_verify<Rat>(kind, exact, opt, "rational");
      std::vector<double> vals;
      for (const auto& v : exact) vals.push_back(projorb::to_double(v));
      return run_verify<double>(kind, vals, opt, "float");
    }

    if (*scan) {
      Range xr, yr;
      if (!parse_range(x_arg, xr) || !parse_range(y_arg, yr)) {
        std::cerr << "error: ranges must be lo:hi\n";
        return 2;
      }
      return run_scan(xr, yr, steps, out_arg, opt);
    }

    if (*alt5) return run_alt5(opt);
    return run_cert_hyperbolic(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
