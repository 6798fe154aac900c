#include "app/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "app/input.hpp"
#include "app/report.hpp"
#include "app/svg.hpp"
#include "quadax/chasles.hpp"
#include "quadax/confocal.hpp"
#include "quadax/constructibility.hpp"
#include "quadax/error.hpp"
#include "quadax/rytz.hpp"

namespace quadax::app {

double pipeline_tolerance() {
  const char* env = std::getenv("QUADRIC_AXES_TOL");
  if (!env || !*env) return 1e-8;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || !(v > 0.0))
    throw invalid_input(std::string("QUADRIC_AXES_TOL must be a positive number, got '") + env + "'");
  return v;
}

namespace {

ConjugateSystem load_system(const RunConfig& cfg) {
  const SystemFile f = read_system_file(cfg.input);
  return ConjugateSystem(f.rows);
}

AxesResult rytz_result(const RytzTrace& t) {
  AxesResult r;
  r.provenance = AxesProvenance::Chasles;
  for (std::size_t k = 0; k < 2; ++k) {
    r.directions.push_back(t.axis_dirs[k]);
    r.lengths.push_back(t.axis_lengths[k]);
  }
  return canonicalize(std::move(r));
}

// Directions are compared up to the eigenspace: an axis whose length is
// repeated in b is measured against the span of all b-axes of that length.
json agreement(const AxesResult& a, const AxesResult& b, double tol) {
  double angle = 0.0, rel = 0.0;
  for (std::size_t k = 0; k < a.lengths.size(); ++k) {
    rel = std::max(rel, std::abs(a.lengths[k] - b.lengths[k]) / b.lengths[k]);
    Vec rest = a.directions[k];
    for (std::size_t i = 0; i < b.lengths.size(); ++i)
      if (std::abs(b.lengths[i] - b.lengths[k]) <= tol * b.lengths[k])
        rest -= b.directions[i] * dot(a.directions[k], b.directions[i]);
    angle = std::max(angle, std::asin(std::min(1.0, norm(rest))));
  }
  return {{"max_direction_angle", angle},
          {"max_length_rel_error", rel},
          {"tolerance", tol},
          {"agree", angle <= 10 * tol && rel <= tol}};
}

}  // namespace

json cmd_axes(const RunConfig& cfg, std::optional<std::size_t> role) {
  const ConjugateSystem sys = load_system(cfg);
  const AxesResult oracle = axes_oracle(sys);
  json rep;
  rep["command"] = "axes";
  rep["inputs"] = {{"file", cfg.input}, {"dimension", sys.dim()}, {"diameters", sys.diameters()}, {"tolerance", cfg.tol}};
  if (sys.dim() == 2) {
    const RytzTrace t = rytz_axes(sys.diameter(0), sys.diameter(1));
    const AxesResult r = rytz_result(t);
    rep["results"] = {{"oracle", oracle}, {"construction", r}, {"method", "rytz"}};
    rep["residuals"] = agreement(r, oracle, cfg.tol);
    rep["trace"] = {{"rytz", t}};
    return rep;
  }
  ChaslesOptions opt;
  opt.tol = cfg.tol;
  opt.role = role;
  const ChaslesResult res = chasles_axes(sys, opt);
  rep["results"] = {{"oracle", oracle},
                    {"construction", res.axes},
                    {"method", "chasles"},
                    {"degenerate_flag", res.degenerate_flag}};
  json resid = agreement(res.axes, oracle, cfg.tol);
  resid["edge_cone_residual"] = res.trace.edges.cone_residual;
  resid["axis_orthogonality"] = res.trace.lines.orthogonality_residual;
  resid["frame_orthogonality"] = res.trace.frame.orthogonality_residual();
  double spread = 0.0;
  for (const auto& l : res.trace.lengths) spread = std::max(spread, l.spread);
  resid["length_spread"] = spread;
  rep["residuals"] = resid;
  rep["trace"] = res.trace;
  return rep;
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct Invariant {
  std::string name;
  double threshold;
  double worst = 0.0;
  std::size_t checked = 0, skipped = 0, failed = 0;
  void record(double r) {
    ++checked;
    if (!(r <= threshold)) ++failed;
    if (!(r <= worst)) worst = r;  // NaN sticks
  }
  json to_json() const {
    return {{"name", name}, {"pass", failed == 0}, {"max_residual", worst}, {"threshold", threshold},
            {"checked", checked}, {"failed", failed}, {"skipped", skipped}};
  }
};

}  // namespace

json cmd_verify(const RunConfig& cfg, const VerifyOptions& opt, bool& pass) {
  if (opt.ellipsoid.empty()) throw invalid_input("verify needs --ellipsoid a1,a2[,a3]");
  const Ellipsoid ell(opt.ellipsoid);
  const std::size_t n = ell.dim();
  if (n != 2 && n != 3) throw invalid_input("verify supports dimension 2 and 3");
  std::vector<ConjugateSystem> systems;
  if (opt.random) {
    if (!cfg.input.empty()) throw invalid_input("give either an input file or --random, not both");
    for (std::size_t k = 0; k < *opt.random; ++k)
      systems.push_back(random_system(ell, cfg.seed + k, /*identity_frame=*/true).system);
  } else {
    if (cfg.input.empty()) throw invalid_input("verify needs an input file or --random N");
    systems.push_back(load_system(cfg));
    if (systems.back().dim() != n) throw invalid_input("system dimension does not match --ellipsoid");
  }

  const auto t0 = std::chrono::steady_clock::now();
  double sum_sq = 0.0, prod = 1.0;
  for (double a : ell.semi_axes()) {
    sum_sq += a * a;
    prod *= a;
  }
  Invariant conj{"conjugacy", 1e-9}, surface{"on_ellipsoid", 1e-9}, sos{"sum_of_squares", 1e-9},
      vol{"volume", 1e-9}, coords{"confocal_roundtrip", 1e-9}, inter{"interlacing", 0.0},
      ident{"norm_square_identity", 1e-9}, orth{"confocal_orthogonality", 1e-9};
  for (const auto& sys : systems) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) conj.record(std::abs(check_conjugacy(sys.diameter(i), sys.diameter(j), ell)));
    for (const auto& x : sys.diameters()) surface.record(std::abs(ell.residual(x)));
    sos.record(std::abs(sum_of_squares(sys) - sum_sq) / sum_sq);
    vol.record(std::abs(std::abs(volume(sys)) - prod) / prod);
    if (!ell.strict()) {
      coords.skipped += n;
      inter.skipped += n;
      ident.skipped += n;
      orth.skipped += n;
      continue;
    }
    for (const auto& x : sys.diameters()) {
      bool on_plane = false;
      for (std::size_t i = 0; i < n; ++i) on_plane |= std::abs(x[i]) <= 1e-8 * ell.axis(0);
      if (on_plane) {
        ++coords.skipped;
        ++inter.skipped;
        ++ident.skipped;
        ++orth.skipped;
        continue;
      }
      const ConfocalTriple t = lambda_roots(ell, x);
      const RecoveredCoordinates rc = recover_coordinates(t);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(rc.abs[i] - std::abs(x[i])) / std::abs(x[i]));
      coords.record(err);
      inter.record(t.interlaced() ? 0.0 : 1.0);
      const IdentityCheck ic = norm_square_identity(t);
      ident.record(std::abs(ic.lhs - ic.rhs) / std::abs(ic.lhs));
      double o = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) o = std::max(o, std::abs(orthogonality_residual(t, j, k)));
      orth.record(o);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json invs = json::array(), resid = json::object();
  pass = true;
  for (const Invariant* inv : {&conj, &surface, &sos, &vol, &coords, &inter, &ident, &orth}) {
    invs.push_back(inv->to_json());
    resid[inv->name] = inv->worst;
    pass = pass && inv->failed == 0;
  }
  json rep;
  rep["command"] = "verify";
  rep["inputs"] = {{"source", opt.random ? "random" : cfg.input},
                   {"count", systems.size()},
                   {"ellipsoid", ell.semi_axes()},
                   {"seed", cfg.seed}};
  rep["results"] = {{"all_pass", pass}, {"invariants", invs}};
  rep["residuals"] = resid;
  rep["trace"] = {{"systems", systems.size()}, {"runtime_seconds", secs}};
  return rep;
}

// ---------------------------------------------------------------------------
// constructible

json cmd_constructible(const RunConfig&, const ExactArgs& args) {
  json rep;
  rep["command"] = "constructible";
  if (args.quartic) {
    if (args.a || args.b || args.x || args.y || args.zsq)
      throw invalid_input("give either --quartic or the parameters --a --b --x --y --zsq");
    std::vector<Rat> desc;
    std::string text = *args.quartic;
    std::istringstream is(text);
    for (std::string tok; std::getline(is, tok, ',');) desc.push_back(parse_rat(tok));
    if (desc.size() != 5) throw invalid_input("--quartic expects 5 coefficients c4,c3,c2,c1,c0");
    if (desc[0] == 0) throw invalid_input("--quartic: leading coefficient must be nonzero");
    const RatPoly q(std::vector<Rat>(desc.rbegin(), desc.rend()));
    const ConstructibilityReport r = quartic_constructibility(q);
    rep["inputs"] = {{"quartic", q}};
    rep["results"] = {{"verdict", r.verdict}, {"methods", r.methods}, {"summary", summarize(r)}};
    rep["residuals"] = {{"routes_agree", r.routes_agree},
                        {"branches_agree", r.field ? r.field->search.branches_agree : true}};
    rep["trace"] = r;
    return rep;
  }
  if (!args.a || !args.b || !args.x || !args.y || !args.zsq)
    throw invalid_input("constructible needs --a --b --x --y --zsq or --quartic");
  const Rat a = parse_rat(*args.a), b = parse_rat(*args.b), x = parse_rat(*args.x), y = parse_rat(*args.y),
            zsq = parse_rat(*args.zsq);
  const InstanceReport r = instance_constructibility(a, b, x, y, zsq);
  rep["inputs"] = {{"a", a}, {"b", b}, {"x", x}, {"y", y}, {"zsq", zsq}};
  json results = {{"verdict", r.report.verdict}, {"methods", r.report.methods}, {"branch", r.branch},
                  {"alpha", r.instance.alpha}};
  if (!r.report.quartic.is_zero()) results["summary"] = summarize(r.report);
  if (!r.closed_form_roots.empty()) {
    json roots = json::array();
    for (std::size_t i = 0; i < r.closed_form_roots.size(); ++i)
      roots.push_back({{"y", r.closed_form_roots[i]}, {"rejected", static_cast<bool>(r.rejected[i])}});
    results["roots"] = roots;
  }
  results["notes"] = r.report.notes;
  rep["results"] = results;
  json resid = {{"routes_agree", r.report.routes_agree}};
  if (r.on_focal_hyperbola) resid["on_focal_hyperbola"] = *r.on_focal_hyperbola;
  rep["residuals"] = resid;
  rep["trace"] = r;
  return rep;
}

// ---------------------------------------------------------------------------
// figure

std::string cmd_figure(const RunConfig& cfg, const std::string& which, std::optional<std::size_t> role) {
  const ConjugateSystem sys = load_system(cfg);
  if (which == "rytz") {
    if (sys.dim() == 2) return render_svg(rytz_figure(rytz_axes(sys.diameter(0), sys.diameter(1))));
    return render_svg(rytz_figure(build_frame(sys, role.value_or(0)).rytz));
  }
  if (which != "focal" && which != "projection" && which != "axes")
    throw invalid_input("--which must be rytz, focal, projection or axes");
  if (sys.dim() != 3) throw invalid_input("figure " + which + " needs a 3D system");
  ChaslesOptions opt;
  opt.tol = cfg.tol;
  opt.role = role;
  const ChaslesResult res = chasles_axes(sys, opt);
  if (which == "focal") return render_svg(focal_figure(res.trace));
  if (which == "projection") return render_svg(projection_figure(res.trace));
  return render_svg(axes_figure(res.trace, res.axes));
}

// ---------------------------------------------------------------------------
// front end

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw invalid_input("cannot write " + path);
  f << text;
  if (!f) throw invalid_input("cannot write " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal axes of an ellipsoid from conjugate semi-diameters"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::size_t> role;
  VerifyOptions vopt;
  std::string ellipsoid;
  ExactArgs ex;
  std::string which;

  auto* axes = app.add_subcommand("axes", "principal axes by construction and by the eigen oracle");
  axes->add_option("input", cfg.input, "system file")->required();
  axes->add_option("--report,-o", cfg.report_path, "write the JSON report here instead of stdout");
  axes->add_option("--role", role, "fixed diameter for P (0, 1, 2), disables the retry");

  auto* verify = app.add_subcommand("verify", "batch invariant checks");
  verify->add_option("input", cfg.input, "system file (axis-aligned with --ellipsoid)");
  verify->add_option("--random", vopt.random, "number of random systems");
  verify->add_option("--ellipsoid", ellipsoid, "semi-axes a1,a2[,a3]")->required();
  verify->add_option("--seed", cfg.seed, "first seed of the random systems");
  verify->add_option("--report,-o", cfg.report_path, "write the JSON report here instead of stdout");

  auto* cons = app.add_subcommand("constructible", "ruler-and-compass decision for the intersection quartic");
  cons->add_option("--a", ex.a, "a = a1^2 - a2^2 (p/q)");
  cons->add_option("--b", ex.b, "b = a2^2 - a3^2 (p/q)");
  cons->add_option("--x", ex.x, "x' (p/q)");
  cons->add_option("--y", ex.y, "y' (p/q)");
  cons->add_option("--zsq", ex.zsq, "z'^2 (p/q)");
  cons->add_option("--quartic", ex.quartic, "coefficients c4,c3,c2,c1,c0 (p/q)");
  cons->add_option("--report,-o", cfg.report_path, "write the JSON report here instead of stdout");

  auto* fig = app.add_subcommand("figure", "SVG figure of a construction step");
  fig->add_option("input", cfg.input, "system file")->required();
  fig->add_option("--which", which, "rytz, focal, projection or axes")->required();
  fig->add_option("--output,-o", cfg.svg_path, "SVG file (stdout when omitted)");
  fig->add_option("--role", role, "fixed diameter for P (0, 1, 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    cfg.tol = pipeline_tolerance();
    if (role && *role > 2) throw invalid_input("--role must be 0, 1 or 2");
    if (*axes) {
      cfg.command = "axes";
      emit(cmd_axes(cfg, role).dump(2) + "\n", cfg.report_path, out);
    } else if (*verify) {
      cfg.command = "verify";
      vopt.ellipsoid = parse_number_list(ellipsoid, "--ellipsoid");
      bool pass = true;
      emit(cmd_verify(cfg, vopt, pass).dump(2) + "\n", cfg.report_path, out);
      if (!pass) {
        err << "verify: invariant check failed\n";
        return kDegenerate;
      }
    } else if (*cons) {
      cfg.command = "constructible";
      emit(cmd_constructible(cfg, ex).dump(2) + "\n", cfg.report_path, out);
    } else if (*fig) {
      cfg.command = "figure";
      emit(cmd_figure(cfg, which, role), cfg.svg_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Degenerate ? kDegenerate : kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kDegenerate;
  }
  return kOk;
}

}  // namespace quadax::app
