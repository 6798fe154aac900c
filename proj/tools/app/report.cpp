#include "app/report.hpp"

void nlohmann::adl_serializer<mpq_class>::to_json(json& j, const mpq_class& r) { j = quadax::to_string(r); }

void nlohmann::adl_serializer<mpq_class>::from_json(const json& j, mpq_class& r) {
  r = quadax::parse_rat(j.get<std::string>());
}

namespace quadax {

namespace {

json opt_point(const std::optional<Point2>& p) { return p ? json(*p) : json(nullptr); }

json poly_coeffs(const RealPoly& p) { return p.coeffs(); }

}  // namespace

void to_json(json& j, const Vec& v) { j = v.data(); }

void from_json(const json& j, Vec& v) { v = Vec(j.get<std::vector<double>>()); }

void to_json(json& j, const AxesResult& r) {
  j = {{"lengths", r.lengths}, {"directions", r.directions}, {"provenance", to_string(r.provenance)}};
}

void from_json(const json& j, AxesResult& r) {
  r.lengths = j.at("lengths").get<std::vector<double>>();
  r.directions = j.at("directions").get<std::vector<Vec>>();
  const auto p = j.at("provenance").get<std::string>();
  r.provenance = p == to_string(AxesProvenance::Chasles) ? AxesProvenance::Chasles : AxesProvenance::Oracle;
}

void to_json(json& j, const RytzTrace& t) {
  j = {{"P", t.P},
       {"Q", t.Q},
       {"M", t.M},
       {"L", t.L},
       {"T", t.T},
       {"P_prime", t.Pprime},
       {"axis_dirs", t.axis_dirs},
       {"axis_lengths", t.axis_lengths},
       {"branch", to_string(t.branch)},
       {"major_segment", t.major_segment}};
}

void to_json(json& j, const SignedConic& c) {
  j = {{"origin", c.origin}, {"frame", c.frame}, {"signed_squares", c.sq}};
}

void to_json(json& j, const ChaslesFrame& f) {
  j = {{"role", f.role},
       {"O", f.O},
       {"P", f.P},
       {"Q", f.Q},
       {"R", f.R},
       {"normal_at_P", f.normal_at_P},
       {"section_axes", f.section_axes},
       {"section_lengths", f.section_lengths},
       {"apex_local", f.apex_local()},
       {"orthogonality_residual", f.orthogonality_residual()},
       {"rytz", f.rytz}};
}

void to_json(json& j, const DualFocalConics& c) {
  j = {{"a", c.a}, {"b", c.b}, {"ellipse", c.ellipse}, {"hyperbola", c.hyperbola}, {"apex", c.apex}};
}

void to_json(json& j, const PlaneConic& c) { j = c.c; }

void to_json(json& j, const ProjectionTrace& p) {
  j = {{"fitted", p.fitted},
       {"closed_form", p.closed_form},
       {"fit_residual", p.fit_residual},
       {"closed_form_distance", p.closed_form_distance},
       {"kind", to_string(p.kind)},
       {"A", p.A},
       {"B", p.B},
       {"fixed_line_residual", p.fixed_line_residual},
       {"C_bar", opt_point(p.Cbar)},
       {"D_bar", opt_point(p.Dbar)},
       {"E_bar", opt_point(p.Ebar)},
       {"F_bar", opt_point(p.Fbar)},
       {"E", opt_point(p.E)},
       {"F", opt_point(p.F)},
       {"image_center", opt_point(p.image_center)},
       {"image_axes", p.image_axes ? json(*p.image_axes) : json(nullptr)},
       {"sample_count", p.samples.size()}};
}

void to_json(json& j, const QuarticInstance& q) {
  j = {{"a", q.a},
       {"b", q.b},
       {"apex", {q.x, q.y, q.z}},
       {"alpha", q.alpha},
       {"alpha_from_system", q.alpha_from_system},
       {"beta", {{"constant", q.beta_const}, {"x", q.beta_x}}},
       {"gamma", q.gamma},
       {"printed_gamma", q.printed_gamma},
       {"quartic", poly_coeffs(q.quartic)},
       {"printed_quartic", poly_coeffs(q.printed_quartic)},
       {"validation_residual", q.validation_residual},
       {"printed_matches_geometry", q.printed_matches_geometry}};
}

void to_json(json& j, const IntersectionPoint& p) {
  j = {{"y", p.y},
       {"x", p.x},
       {"residual_projection", p.residual_projection},
       {"residual_ellipse", p.residual_ellipse},
       {"residual_reduced", p.residual_reduced},
       {"multiple", p.multiple},
       {"accepted", p.accepted},
       {"note", p.note}};
}

void to_json(json& j, const Y0Result& r) {
  j = {{"alpha0", r.alpha0}, {"on_hyperbola", r.on_hyperbola}, {"foci", r.foci},
       {"edges", r.edges},   {"axes", r.axes},                 {"note", r.note}};
}

void to_json(json& j, const EdgeSet& e) {
  j = {{"directions", e.directions},
       {"ellipse_points", e.ellipse_points},
       {"classification", to_string(e.classification)},
       {"merged_roots", e.merged_roots},
       {"min_separation", e.min_separation},
       {"cone_residual", e.cone_residual},
       {"points", e.points}};
}

void to_json(json& j, const AxisLines& l) {
  j = {{"directions", l.directions},
       {"pairings", l.pairings},
       {"orthogonality_residual", l.orthogonality_residual},
       {"cone_frame_angle", l.cone_frame_angle},
       {"commutator_residual", l.commutator_residual}};
}

void to_json(json& j, const AxisLength& l) {
  j = {{"length", l.length}, {"per_edge", l.per_edge}, {"spread", l.spread}, {"from_volume", l.from_volume}};
}

void to_json(json& j, const ChaslesTrace& t) {
  json attempts = json::array();
  for (const auto& a : t.attempts) attempts.push_back({{"role", a.role}, {"outcome", a.outcome}});
  j = {{"branch", t.branch},
       {"attempts", attempts},
       {"frame", t.frame},
       {"conics", t.conics},
       {"projection", t.projection ? json(*t.projection) : json(nullptr)},
       {"quartic", t.quartic ? json(*t.quartic) : json(nullptr)},
       {"y0", t.y0 ? json(*t.y0) : json(nullptr)},
       {"edges", t.edges},
       {"lines", t.lines},
       {"lengths", t.lengths}};
}

// ---------------------------------------------------------------------------
// exact values

void to_json(json& j, const RatPoly& p) {
  j = {{"coeffs", p.coeffs()}, {"text", to_string(p, "x")}};
}

void from_json(const json& j, RatPoly& p) { p = RatPoly(j.at("coeffs").get<std::vector<Rat>>()); }

void to_json(json& j, const QuadFieldElem& x) {
  j = {{"d", to_string(x.d())}, {"lam", x.lam()}, {"nu", x.nu()}, {"text", to_string(x)}};
}

void from_json(const json& j, QuadFieldElem& x) {
  x = QuadFieldElem(Int(j.at("d").get<std::string>()), j.at("lam").get<Rat>(), j.at("nu").get<Rat>());
}

void to_json(json& j, Verdict v) { j = to_string(v); }

void from_json(const json& j, Verdict& v) {
  const auto s = j.get<std::string>();
  for (Verdict c : {Verdict::Planar, Verdict::ReduciblePlanar, Verdict::Solid})
    if (to_string(c) == s) {
      v = c;
      return;
    }
  throw json::other_error::create(501, "unknown verdict " + s, &j);
}

void to_json(json& j, const RationalRootReport& r) {
  j = {{"roots", r.roots},
       {"candidates", r.candidates},
       {"candidate_count", r.candidate_count},
       {"candidates_truncated", r.candidate_count > r.candidates.size()},
       {"primitive", r.primitive}};
}

void from_json(const json& j, RationalRootReport& r) {
  r.roots = j.at("roots").get<std::vector<Rat>>();
  r.candidates = j.at("candidates").get<std::vector<Rat>>();
  r.candidate_count = j.at("candidate_count").get<std::size_t>();
  r.primitive = j.at("primitive").get<RatPoly>();
}

void to_json(json& j, const BiPoly& p) { j = to_string(p); }

void to_json(json& j, const SplitBranch& b) {
  j = {{"name", b.name},
       {"equation", to_string(b.equation, "nu")},
       {"equation_coeffs", b.equation.coeffs()},
       {"lam_squared", b.lam_squared ? json(to_string(*b.lam_squared, "nu")) : json(nullptr)},
       {"rational_root_test", b.test},
       {"roots", b.roots}};
}

void to_json(json& j, const PrintedSplitCheck& c) {
  j = {{"lam_zero", to_string(c.lam_zero, "nu")},
       {"lam_nonzero", to_string(c.lam_nonzero, "nu")},
       {"lam_zero_matches", c.lam_zero_matches},
       {"lam_nonzero_matches", c.lam_nonzero_matches},
       {"lam_zero_test", c.lam_zero_test},
       {"lam_nonzero_test", c.lam_nonzero_test},
       {"same_conclusion", c.same_conclusion},
       {"note", c.note}};
}

void to_json(json& j, const QFRootSearch& s) {
  j = {{"poly", to_string(s.poly, "w")},
       {"d", to_string(s.poly.d())},
       {"rational_part", s.A},
       {"surd_part", s.B},
       {"resultant", s.resultant},
       {"resultant_test", s.resultant_test},
       {"branches", s.branches},
       {"printed_split", s.printed ? json(*s.printed) : json(nullptr)},
       {"roots", s.roots},
       {"branches_agree", s.branches_agree}};
}

void to_json(json& j, const ResolventSystem& s) {
  j = {{"quartic", s.quartic},
       {"k", {{"k4", s.k4}, {"k2", s.k2}, {"k1", s.k1}, {"k0", s.k0}}},
       {"normalization", s.normalization},
       {"equations", s.equations},
       {"cubic", to_string(s.cubic, "c")},
       {"shift", s.shift},
       {"depressed", to_string(s.depressed, "w")},
       {"P", s.P},
       {"R", s.R},
       {"D", to_string(s.D)}};
}

void to_json(json& j, const StandardRoute& s) {
  json split = nullptr;
  if (s.split) split = {{"f1", s.split->f1}, {"f2", s.split->f2}, {"z", s.split->z}};
  j = {{"quartic", s.quartic},   {"monic", s.monic},
       {"rational_root_test", s.root_test}, {"factors", s.factors},
       {"resolvent", s.resolvent}, {"resolvent_test", s.resolvent_test},
       {"quadratic_split", split}, {"irreducible", s.irreducible},
       {"verdict", s.verdict}};
}

void to_json(json& j, const FieldRoute& f) {
  j = {{"system", f.system}, {"search", f.search}, {"verdict", f.verdict}};
}

void to_json(json& j, const ConstructibilityReport& r) {
  j = {{"verdict", r.verdict},
       {"methods", r.methods},
       {"quartic", r.quartic},
       {"standard_resolvent", r.standard ? json(*r.standard) : json(nullptr)},
       {"field_resolvent", r.field ? json(*r.field) : json(nullptr)},
       {"routes_agree", r.routes_agree},
       {"notes", r.notes}};
}

void to_json(json& j, const InstanceReport& r) {
  const auto& in = r.instance;
  j = {{"branch", r.branch},
       {"alpha", in.alpha},
       {"geometric_quartic", in.geometric},
       {"reduced_quartic", in.printed},
       {"report", r.report},
       {"geometric_report", r.geometric ? json(*r.geometric) : json(nullptr)},
       {"closed_form_roots", r.closed_form_roots},
       {"rejected", r.rejected},
       {"on_focal_hyperbola", r.on_focal_hyperbola ? json(*r.on_focal_hyperbola) : json(nullptr)}};
}

VerdictSummary summarize(const ConstructibilityReport& r) {
  VerdictSummary s;
  s.verdict = r.verdict;
  s.quartic = r.quartic;
  s.routes_agree = r.routes_agree;
  if (r.standard) {
    s.resolvent = r.standard->resolvent;
    s.resolvent_candidates = r.standard->resolvent_test.candidates;
  }
  if (r.field) s.field_roots = r.field->search.roots;
  return s;
}

void to_json(json& j, const VerdictSummary& s) {
  j = {{"verdict", s.verdict},
       {"quartic", s.quartic},
       {"resolvent", s.resolvent},
       {"resolvent_candidates", s.resolvent_candidates},
       {"field_roots", s.field_roots},
       {"routes_agree", s.routes_agree}};
}

void from_json(const json& j, VerdictSummary& s) {
  s.verdict = j.at("verdict").get<Verdict>();
  s.quartic = j.at("quartic").get<RatPoly>();
  s.resolvent = j.at("resolvent").get<RatPoly>();
  s.resolvent_candidates = j.at("resolvent_candidates").get<std::vector<Rat>>();
  s.field_roots = j.at("field_roots").get<std::vector<QuadFieldElem>>();
  s.routes_agree = j.at("routes_agree").get<bool>();
}

bool operator==(const VerdictSummary& a, const VerdictSummary& b) {
  return a.verdict == b.verdict && a.quartic == b.quartic && a.resolvent == b.resolvent &&
         a.resolvent_candidates == b.resolvent_candidates && a.field_roots == b.field_roots &&
         a.routes_agree == b.routes_agree;
}

}  // namespace quadax
