#pragma once

// JSON serialisation of results and traces. Doubles are written with
// round-trip precision; exact values travel as strings ("p/q").

#include <json.hpp>

#include "quadax/chasles.hpp"
#include "quadax/confocal.hpp"
#include "quadax/constructibility.hpp"
#include "quadax/conjugate.hpp"
#include "quadax/rytz.hpp"

// mpq_class lives in the global namespace, out of reach of ADL.
template <>
struct nlohmann::adl_serializer<mpq_class> {
  static void to_json(json& j, const mpq_class& r);
  static void from_json(const json& j, mpq_class& r);
};

namespace quadax {

using json = nlohmann::json;

void to_json(json& j, const Vec& v);
void from_json(const json& j, Vec& v);
void to_json(json& j, const AxesResult& r);
void from_json(const json& j, AxesResult& r);
void to_json(json& j, const RytzTrace& t);
void to_json(json& j, const SignedConic& c);
void to_json(json& j, const ChaslesFrame& f);
void to_json(json& j, const DualFocalConics& c);
void to_json(json& j, const PlaneConic& c);
void to_json(json& j, const ProjectionTrace& p);
void to_json(json& j, const QuarticInstance& q);
void to_json(json& j, const IntersectionPoint& p);
void to_json(json& j, const Y0Result& r);
void to_json(json& j, const EdgeSet& e);
void to_json(json& j, const AxisLines& l);
void to_json(json& j, const AxisLength& l);
void to_json(json& j, const ChaslesTrace& t);

void to_json(json& j, const RatPoly& p);
void from_json(const json& j, RatPoly& p);
void to_json(json& j, const QuadFieldElem& x);
void from_json(const json& j, QuadFieldElem& x);
void to_json(json& j, Verdict v);
void from_json(const json& j, Verdict& v);
void to_json(json& j, const RationalRootReport& r);
void from_json(const json& j, RationalRootReport& r);
void to_json(json& j, const BiPoly& p);
void to_json(json& j, const SplitBranch& b);
void to_json(json& j, const PrintedSplitCheck& c);
void to_json(json& j, const QFRootSearch& s);
void to_json(json& j, const ResolventSystem& s);
void to_json(json& j, const StandardRoute& s);
void to_json(json& j, const FieldRoute& f);
void to_json(json& j, const ConstructibilityReport& r);
void to_json(json& j, const InstanceReport& r);

/// The fields of a ConstructibilityReport that are read back from a report.
struct VerdictSummary {
  Verdict verdict = Verdict::Solid;
  RatPoly quartic;
  RatPoly resolvent;
  std::vector<Rat> resolvent_candidates;
  std::vector<QuadFieldElem> field_roots;
  bool routes_agree = true;
};
VerdictSummary summarize(const ConstructibilityReport& r);
void to_json(json& j, const VerdictSummary& s);
void from_json(const json& j, VerdictSummary& s);
bool operator==(const VerdictSummary& a, const VerdictSummary& b);

}  // namespace quadax
