#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "csl/csop.hpp"
#include "csl/integrals.hpp"
#include "csl/laws.hpp"

namespace csl::io {

using nlohmann::json;

/// Rounds to 12 significant digits, the precision of every number the CLI prints.
double round12(double v);
std::string format_number(double v);

/// "{1,3}"; "{}" for the empty set.
std::string format_subset(Subset s);
/// Accepts "{1,3}", "1,3", an array of point labels (numbers or strings), or "X" for the full set.
Subset parse_subset(const json& j, GroundSet ground, const std::string& where);

json measure_to_json(const SetFunction& m);
/// `{"n": 3, "values": {"{}": 0, "{1}": ...}}`; every subset must be present.
SetFunction set_function_from_json(const json& j, const std::string& where);
MonotoneMeasure measure_from_json(const json& j, const std::string& where);

PointFunction function_from_json(const json& j, GroundSet ground, const std::string& where);

// Component descriptors. normalize_* returns the canonical object form; build_* takes either form.
json normalize_op(const json& j, const std::string& where);
BinaryOp build_op(const json& j, const std::string& where);
json normalize_delta(const json& j, const std::string& where);
Dissimilarity build_delta(const json& j, const std::string& where);
json normalize_pair(const json& j, const std::string& where);
FPair build_pair(const json& j, const std::string& where);
json normalize_fca(const json& j, const std::string& where);
Fca build_fca(const json& j, GroundSet ground, const std::string& where);
json normalize_l(const json& j, const std::string& where);
LFunction build_l(const json& j, const std::string& where);
json normalize_system(const json& j, GroundSet ground, const std::string& where);
DecompositionSystem build_system(const json& j, GroundSet ground, const std::string& where);
json normalize_relation(const json& j, GroundSet ground, const std::string& where);
RelationSpec build_relation(const json& j, GroundSet ground, const std::string& where);

/// `{"system": ..., "relation": ..., "L": ..., "A": ..., "Ahat": ...}`. The relation defaults to
/// the system's natural one and Ahat defaults to A.
json normalize_cs_config(const json& j, GroundSet ground, const std::string& where);
CSConfig build_cs_config(const json& j, GroundSet ground, const std::string& where);
/// Builds a factory usable for every n; explicit collections only fit their own ground set.
ConfigFactory cs_config_factory(const json& j, const std::string& where);

/// One evaluation: ground set, f, mu, optional muhat, an operator descriptor and options.
struct ProblemFile {
  GroundSet ground{1};
  PointFunction f{GroundSet(1), {0.0}};
  MonotoneMeasure mu{SetFunction::zero(GroundSet(1))};
  std::optional<SetFunction> muhat;
  json op;       ///< normalized operator descriptor
  json options;  ///< normalized options
};

ProblemFile parse_problem(const json& j);
json normalized_problem(const ProblemFile& p);

struct EvalOverrides {
  std::optional<std::string> policy;
  std::optional<std::string> mode;
  std::optional<std::string> method;
};

/// Runs the operator and returns `{"operator": id, "value": v, ...}` with the per-term breakdown.
json evaluate(const ProblemFile& p, const EvalOverrides& overrides = {});

/// Fills a report with human-readable lines.
std::string describe_eval(const json& report);

struct CatalogEntry {
  std::string id;
  std::string parameters;
  std::string description;
};

const std::vector<CatalogEntry>& operator_catalog();

json instance_to_json(const Instance& in);
Instance instance_from_json(const json& j, const std::string& where);
json law_report_to_json(const LawReport& r);

/// A manifest line: an equivalence law or an operator property, with its expected verdict.
struct ManifestEntry {
  std::string name;
  std::string law;  ///< law id, or the property name when `property` is set
  bool is_property = false;
  bool hunt = false;  ///< run find_counterexample instead of verify_equivalence
  Verdict expect = Verdict::holds_on_sample;
  SweepConfig sweep;
  PropertySweep property;
  json source;
};

struct Manifest {
  std::uint64_t seed = 1;
  std::vector<ManifestEntry> entries;
};

Manifest parse_manifest(const json& j);

SamplerClass sampler_from_string(const std::string& s, const std::string& where);
FunctionDomain domain_from_string(const std::string& s, const std::string& where);

}  // namespace csl::io
