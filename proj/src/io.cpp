#include "csl/io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "csl/error.hpp"

namespace csl::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) { throw MalformedInput(where + ": " + msg); }

// Runs fn and prefixes any library error with the JSON location.
template <class Fn>
auto located(const std::string& where, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const MalformedInput& e) {
    throw MalformedInput(where + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(where + ": " + e.what());
  } catch (const CapacityError& e) {
    throw CapacityError(where + ": " + e.what());
  } catch (const GroundMismatch& e) {
    throw GroundMismatch(where + ": " + e.what());
  }
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

std::string sub(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }
std::string idx(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

int point_label(const json& j, GroundSet ground, const std::string& where) {
  int p = 0;
  if (j.is_number_integer()) {
    p = j.get<int>();
  } else if (j.is_string()) {
    try {
      std::size_t used = 0;
      p = std::stoi(j.get<std::string>(), &used);
      if (used != j.get<std::string>().size()) bad(where, "bad point label '" + j.get<std::string>() + "'");
    } catch (const std::logic_error&) {
      bad(where, "bad point label '" + j.get<std::string>() + "'");
    }
  } else {
    bad(where, "point labels are integers or strings");
  }
  if (p < 1 || p > ground.n()) bad(where, "point " + std::to_string(p) + " is outside [" + std::to_string(ground.n()) + "]");
  return p;
}

std::optional<SystemTag> tag_from_string(const std::string& s) {
  if (s == "one") return SystemTag::one;
  if (s == "part" || s == "partition") return SystemTag::part;
  if (s == "chain") return SystemTag::chain;
  if (s == "singletons") return SystemTag::singletons;
  return std::nullopt;
}

const char* tag_name(SystemTag t) {
  switch (t) {
    case SystemTag::one: return "one";
    case SystemTag::part: return "part";
    case SystemTag::chain: return "chain";
    case SystemTag::singletons: return "singletons";
  }
  return "?";
}

std::optional<RelationKind> relation_from_string(const std::string& s) {
  if (s == "diagonal") return RelationKind::diagonal;
  if (s == "complement") return RelationKind::complement;
  if (s == "rplus") return RelationKind::rplus;
  if (s == "rminus") return RelationKind::rminus;
  if (s == "consecutive") return RelationKind::consecutive;
  return std::nullopt;
}

const char* relation_name(RelationKind k) {
  switch (k) {
    case RelationKind::diagonal: return "diagonal";
    case RelationKind::complement: return "complement";
    case RelationKind::rplus: return "rplus";
    case RelationKind::rminus: return "rminus";
    case RelationKind::consecutive: return "consecutive";
    case RelationKind::custom: return "custom";
  }
  return "?";
}

const std::map<std::string, FcaKind>& fca_kinds() {
  static const std::map<std::string, FcaKind> m{{"inf", FcaKind::inf},   {"sup", FcaKind::sup},
                                                {"prod", FcaKind::prod}, {"sum", FcaKind::sum},
                                                {"mean", FcaKind::mean}, {"pnorm", FcaKind::pnorm},
                                                {"lukasiewicz", FcaKind::lukasiewicz}};
  return m;
}

json rounded(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(round12(x));
  return a;
}

json subsets_json(const std::vector<Subset>& v) {
  json a = json::array();
  for (Subset s : v) a.push_back(format_subset(s));
  return a;
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round12(v));
  return buf;
}

std::string format_subset(Subset s) { return s.to_string(); }

Subset parse_subset(const json& j, GroundSet ground, const std::string& where) {
  std::vector<int> points;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) points.push_back(point_label(j[i], ground, idx(where, i)));
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "X") return ground.full();
    if (!s.empty() && s.front() == '{') {
      if (s.back() != '}') bad(where, "unbalanced braces in '" + s + "'");
      s = s.substr(1, s.size() - 2);
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto a = tok.find_first_not_of(' ');
      const auto b = tok.find_last_not_of(' ');
      if (a == std::string::npos) bad(where, "empty point label in '" + j.get<std::string>() + "'");
      points.push_back(point_label(json(tok.substr(a, b - a + 1)), ground, where));
    }
  } else {
    bad(where, "subsets are strings like \"{1,3}\" or arrays of point labels");
  }
  std::uint32_t bits = 0;
  for (int p : points) {
    const std::uint32_t bit = 1u << (p - 1);
    if (bits & bit) bad(where, "point " + std::to_string(p) + " is repeated");
    bits |= bit;
  }
  return Subset(bits);
}

json measure_to_json(const SetFunction& m) {
  json values = json::object();
  for (std::uint32_t b = 0; b < m.ground().subset_count(); ++b) values[format_subset(Subset(b))] = m(Subset(b));
  return json{{"n", m.ground().n()}, {"values", values}};
}

SetFunction set_function_from_json(const json& j, const std::string& where) {
  const int n = integer(member(j, "n", where), sub(where, "n"));
  const GroundSet ground = located(sub(where, "n"), [&] { return GroundSet(n); });
  const json& values = member(j, "values", where);
  if (!values.is_object()) bad(sub(where, "values"), "expected an object keyed by subsets");
  std::vector<double> v(ground.subset_count(), 0.0);
  std::vector<bool> seen(v.size(), false);
  for (const auto& [key, val] : values.items()) {
    const std::string w = sub(where, "values") + "[\"" + key + "\"]";
    const Subset s = parse_subset(json(key), ground, w);
    if (seen[s.bits()]) bad(w, "subset " + format_subset(s) + " appears twice");
    seen[s.bits()] = true;
    v[s.bits()] = number(val, w);
  }
  for (std::uint32_t b = 0; b < v.size(); ++b) {
    if (!seen[b]) bad(sub(where, "values"), "missing subset " + format_subset(Subset(b)));
  }
  return located(where, [&] { return SetFunction(ground, v); });
}

MonotoneMeasure measure_from_json(const json& j, const std::string& where) {
  SetFunction s = set_function_from_json(j, where);
  return located(where, [&] { return MonotoneMeasure(std::move(s)); });
}

PointFunction function_from_json(const json& j, GroundSet ground, const std::string& where) {
  std::vector<double> v;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], idx(where, i)));
  } else if (j.is_object()) {
    v.assign(static_cast<std::size_t>(ground.n()), 0.0);
    std::vector<bool> seen(v.size(), false);
    for (const auto& [key, val] : j.items()) {
      const int p = point_label(json(key), ground, where);
      seen[static_cast<std::size_t>(p - 1)] = true;
      v[static_cast<std::size_t>(p - 1)] = number(val, where + "[\"" + key + "\"]");
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) bad(where, "missing value at point " + std::to_string(i + 1));
    }
  } else {
    bad(where, "f is an array of values or an object keyed by point");
  }
  return located(where, [&] { return PointFunction(ground, v); });
}

json normalize_op(const json& j, const std::string& where) {
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object() && j.contains("op")) {
    name = text(j.at("op"), sub(where, "op"));
  } else if (j.is_object() && j.value("kind", "") == "scale") {
    const double c = number(member(j, "c", where), sub(where, "c"));
    const json inner = normalize_op(member(j, "inner", where), sub(where, "inner"));
    name = ops::scaled(c, build_op(inner, sub(where, "inner"))).label();
  } else {
    bad(where, "an operation is a name such as \"min\" or {\"op\": name}");
  }
  const BinaryOp op = located(where, [&] { return ops::by_name(name); });
  return json(op.label());
}

BinaryOp build_op(const json& j, const std::string& where) {
  const json n = normalize_op(j, where);
  return ops::by_name(n.get<std::string>());
}

json normalize_delta(const json& j, const std::string& where) {
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object() && j.contains("delta")) {
    name = text(j.at("delta"), sub(where, "delta"));
  } else {
    bad(where, "a dissimilarity is a name such as \"abs\" or {\"delta\": name}");
  }
  located(where, [&] { return dissim::by_name(name); });
  return json(name);
}

Dissimilarity build_delta(const json& j, const std::string& where) {
  return dissim::by_name(normalize_delta(j, where).get<std::string>());
}

json normalize_pair(const json& j, const std::string& where) {
  const json& p = j.is_object() && j.contains("pair") ? j.at("pair") : j;
  const std::string w = j.is_object() && j.contains("pair") ? sub(where, "pair") : where;
  json out{{"F1", normalize_op(member(p, "F1", w), sub(w, "F1"))}, {"F2", normalize_op(member(p, "F2", w), sub(w, "F2"))}};
  located(w, [&] { return FPair::make(ops::by_name(out["F1"]), ops::by_name(out["F2"])); });
  return out;
}

FPair build_pair(const json& j, const std::string& where) {
  const json n = normalize_pair(j, where);
  return FPair::make(ops::by_name(n["F1"]), ops::by_name(n["F2"]));
}

json normalize_fca(const json& j, const std::string& where) {
  if (j.is_string()) return normalize_fca(json{{"kind", j}}, where);
  const std::string kind = text(member(j, "kind", where), sub(where, "kind"));
  if (kind == "scale") {
    return json{{"kind", kind}, {"alpha", number(member(j, "alpha", where), sub(where, "alpha"))},
                {"inner", normalize_fca(member(j, "inner", where), sub(where, "inner"))}};
  }
  if (kind == "power") {
    const double q = number(member(j, "q", where), sub(where, "q"));
    if (!(q > 0)) bad(sub(where, "q"), "the exponent must be positive");
    return json{{"kind", kind}, {"q", q}, {"inner", normalize_fca(member(j, "inner", where), sub(where, "inner"))}};
  }
  if (kind == "cap") {
    return json{{"kind", kind}, {"cap", number(member(j, "cap", where), sub(where, "cap"))},
                {"inner", normalize_fca(member(j, "inner", where), sub(where, "inner"))}};
  }
  if (!fca_kinds().contains(kind)) bad(sub(where, "kind"), "unknown aggregation '" + kind + "'");
  if (kind == "pnorm") {
    const double p = number(member(j, "p", where), sub(where, "p"));
    if (p < 1) bad(sub(where, "p"), "pnorm needs p >= 1");
    return json{{"kind", kind}, {"p", p}};
  }
  return json{{"kind", kind}};
}

Fca build_fca(const json& j, GroundSet ground, const std::string& where) {
  const json n = normalize_fca(j, where);
  const std::string kind = n["kind"];
  if (kind == "scale") return scale_fca(n["alpha"], build_fca(n["inner"], ground, sub(where, "inner")));
  if (kind == "power") return power_fca(n["q"], build_fca(n["inner"], ground, sub(where, "inner")));
  if (kind == "cap") return cap_fca(n["cap"], build_fca(n["inner"], ground, sub(where, "inner")));
  return located(where, [&] { return make_fca(fca_kinds().at(kind), ground, n.value("p", 1.0)); });
}

json normalize_l(const json& j, const std::string& where) {
  const std::string kind = text(member(j, "kind", where), sub(where, "kind"));
  if (kind == "L1") {
    const double p = number(member(j, "p", where), sub(where, "p"));
    if (p < 1) bad(sub(where, "p"), "L1 needs p >= 1");
    return json{{"kind", kind}, {"p", p}};
  }
  if (kind == "L2" || kind == "L3" || kind == "L4" || kind == "L5") {
    return json{{"kind", kind}, {"op", normalize_op(member(j, "op", where), sub(where, "op"))}};
  }
  if (kind == "L6") {
    return json{{"kind", kind}, {"delta", normalize_delta(member(j, "delta", where), sub(where, "delta"))},
                {"op", normalize_op(member(j, "op", where), sub(where, "op"))}};
  }
  if (kind == "L7") return json{{"kind", kind}, {"pair", normalize_pair(member(j, "pair", where), sub(where, "pair"))}};
  bad(sub(where, "kind"), "unknown L function '" + kind + "' (expected L1..L7)");
}

LFunction build_l(const json& j, const std::string& where) {
  const json n = normalize_l(j, where);
  const std::string kind = n["kind"];
  if (kind == "L1") return lcat::l1(n["p"]);
  if (kind == "L6") return lcat::l6(build_delta(n["delta"], where), build_op(n["op"], where));
  if (kind == "L7") return lcat::l7(build_pair(n["pair"], where));
  const BinaryOp op = build_op(n["op"], where);
  if (kind == "L2") return lcat::l2(op);
  if (kind == "L3") return lcat::l3(op);
  if (kind == "L4") return lcat::l4(op);
  return lcat::l5(op);
}

json normalize_system(const json& j, GroundSet ground, const std::string& where) {
  if (j.is_string()) return normalize_system(json{{"system", j}}, ground, where);
  if (j.is_object() && j.contains("system")) {
    const std::string name = text(j.at("system"), sub(where, "system"));
    const auto tag = tag_from_string(name);
    if (!tag) bad(sub(where, "system"), "unknown system '" + name + "' (one, part, chain, singletons)");
    json out{{"system", tag_name(*tag)}};
    if (j.contains("max_len")) {
      if (*tag != SystemTag::chain) bad(sub(where, "max_len"), "max_len applies to chains only");
      out["max_len"] = integer(j.at("max_len"), sub(where, "max_len"));
    }
    return out;
  }
  if (j.is_object() && j.contains("collections")) {
    const json& cs = j.at("collections");
    if (!cs.is_array() || cs.empty()) bad(sub(where, "collections"), "expected a nonempty array");
    json out = json::array();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string w = idx(sub(where, "collections"), i);
      const json& members = cs[i].is_object() ? member(cs[i], "members", w) : cs[i];
      const std::string order = cs[i].is_object() ? cs[i].value("order", "given") : "given";
      if (order != "given" && order != "canonical") bad(sub(w, "order"), "order is \"given\" or \"canonical\"");
      if (!members.is_array() || members.empty()) bad(w, "a collection is a nonempty array of subsets");
      std::vector<Subset> subs;
      for (std::size_t k = 0; k < members.size(); ++k) {
        const Subset s = parse_subset(members[k], ground, idx(w, k));
        if (s.bits() == 0) bad(idx(w, k), "collections hold nonempty subsets");
        subs.push_back(s);
      }
      if (order == "canonical") std::sort(subs.begin(), subs.end(), [](Subset a, Subset b) { return a.bits() < b.bits(); });
      located(w, [&] { return Collection(ground, subs); });
      out.push_back(json{{"members", subsets_json(subs)}, {"order", "given"}});
    }
    return json{{"collections", out}};
  }
  bad(where, "a system is {\"system\": tag} or {\"collections\": [...]}");
}

DecompositionSystem build_system(const json& j, GroundSet ground, const std::string& where) {
  const json n = normalize_system(j, ground, where);
  if (n.contains("system")) {
    std::optional<int> max_len;
    if (n.contains("max_len")) max_len = n["max_len"].get<int>();
    return located(where, [&] { return DecompositionSystem::symbolic(ground, *tag_from_string(n["system"]), max_len); });
  }
  std::vector<Collection> cs;
  for (const auto& c : n["collections"]) {
    std::vector<Subset> subs;
    for (const auto& s : c["members"]) subs.push_back(parse_subset(s, ground, where));
    cs.emplace_back(ground, subs);
  }
  return DecompositionSystem::explicit_list(ground, std::move(cs));
}

json normalize_relation(const json& j, GroundSet ground, const std::string& where) {
  if (j.is_string()) {
    const auto k = relation_from_string(j.get<std::string>());
    if (!k) bad(where, "unknown relation '" + j.get<std::string>() + "'");
    return json(relation_name(*k));
  }
  if (j.is_object() && j.contains("custom")) {
    const json& pairs = j.at("custom");
    if (!pairs.is_array()) bad(sub(where, "custom"), "expected an array of [C, D] pairs");
    json out = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string w = idx(sub(where, "custom"), i);
      if (!pairs[i].is_array() || pairs[i].size() != 2) bad(w, "expected a [C, D] pair");
      out.push_back(json::array({format_subset(parse_subset(pairs[i][0], ground, idx(w, 0))),
                                 format_subset(parse_subset(pairs[i][1], ground, idx(w, 1)))}));
    }
    return json{{"custom", out}};
  }
  bad(where, "a relation is a name (diagonal, complement, rplus, rminus, consecutive) or {\"custom\": [...]}");
}

RelationSpec build_relation(const json& j, GroundSet ground, const std::string& where) {
  const json n = normalize_relation(j, ground, where);
  if (n.is_string()) return RelationSpec{*relation_from_string(n.get<std::string>()), {}};
  RelationSpec spec{RelationKind::custom, {}};
  for (const auto& p : n["custom"]) spec.custom_pairs.emplace_back(parse_subset(p[0], ground, where), parse_subset(p[1], ground, where));
  return spec;
}

json normalize_cs_config(const json& j, GroundSet ground, const std::string& where) {
  if (!j.is_object()) bad(where, "expected a CS configuration object");
  json out;
  out["system"] = normalize_system(member(j, "system", where), ground, sub(where, "system"));
  if (j.contains("relation")) {
    out["relation"] = normalize_relation(j.at("relation"), ground, sub(where, "relation"));
  } else if (out["system"].contains("system")) {
    out["relation"] = relation_name(default_relation(*tag_from_string(out["system"]["system"])));
  } else {
    out["relation"] = "diagonal";
  }
  out["L"] = normalize_l(member(j, "L", where), sub(where, "L"));
  out["A"] = normalize_fca(member(j, "A", where), sub(where, "A"));
  out["Ahat"] = j.contains("Ahat") ? normalize_fca(j.at("Ahat"), sub(where, "Ahat")) : out["A"];
  return out;
}

CSConfig build_cs_config(const json& j, GroundSet ground, const std::string& where) {
  const json n = normalize_cs_config(j, ground, where);
  return CSConfig{build_system(n["system"], ground, sub(where, "system")), build_relation(n["relation"], ground, sub(where, "relation")),
                  build_l(n["L"], sub(where, "L")), build_fca(n["A"], ground, sub(where, "A")),
                  build_fca(n["Ahat"], ground, sub(where, "Ahat"))};
}

ConfigFactory cs_config_factory(const json& j, const std::string& where) {
  // Normalizing on the largest ground set surfaces descriptor errors before a sweep starts.
  normalize_cs_config(j, GroundSet(kMaxPoints), where);
  return [j, where](GroundSet g) { return build_cs_config(j, g, where); };
}

// ------------------------------------------------------------------------------------------------
// Problem files

namespace {

const std::vector<CatalogEntry> kCatalog{
    {"choquet", "form: 1..4", "discrete Choquet integral in one of its four classical expressions"},
    {"cs", "system, relation, L, A, Ahat", "Choquet-Sugeno-like operator: max over collections of the sum of L over related pairs"},
    {"sugeno", "F, A, mode: generic|inf|levelset", "upper Sugeno-like operator: max over sets of F(A(f|D), mu(D))"},
    {"shilkret", "A, mode", "upper Sugeno-like operator with F = product"},
    {"fc", "op", "ordered sum f_(i) o (mu(B_(i)) - muhat(B_(i+1))) over the upper sets of the ascending order"},
    {"fc_levelset", "op", "level-set rewriting of fc with mu = muhat"},
    {"rc", "op", "ordered sum f_(i) o (mu(C_(i)) - muhat(C_(i-1))) over the lower sets of the ascending order"},
    {"d_choquet", "delta, op", "d-Choquet operator: sum delta(f_(i), f_(i-1)) o mu(B_(i))"},
    {"cff", "pair {F1, F2}", "C_(F1,F2) operator: sum F1(f_(i), mu(B_(i))) - F2(f_(i-1), mu(B_(i)))"},
    {"cc", "copula", "CC-integral: cff with F1 = F2 = the given copula, on [0,1]-valued f and capacities"},
    {"decomposition", "F, system, method: partition_exact|lp_vertex|grid, step", "decomposition integral: sup of sum F(a_D, mu(D)) over sub-decompositions of f"},
    {"lebesgue", "op, A, system", "generalized Lebesgue operator: cs with L = A o mu over partitions and the diagonal relation"},
    {"lovasz", "op, A", "generalized Lovasz extension: sum over D of A(f|D) o Mob(D)"},
    {"ie", "op, A, domain", "inclusion-exclusion operator with an interaction operator A"},
    {"minmax_diff", "op", "sum over D of (min_D f - max_{D^c} f)_+ o mu(D)"},
    {"p_variation", "p, A, system, relation", "p-variation: cs with L = |x - y|^p and zero measures"},
};

const std::set<std::string> kOptionKeys{"policy", "mode", "method", "step", "threads"};

PermutationPolicy policy_from(const json& o, const std::string& where) {
  const std::string s = o.value("policy", "canonical");
  if (s == "canonical") return PermutationPolicy::canonical;
  if (s == "all") return PermutationPolicy::all;
  bad(sub(where, "policy"), "policy is \"canonical\" or \"all\"");
}

LevelMode mode_from(const json& o, const std::string& where) {
  const std::string s = o.value("mode", "ordered");
  if (s == "ordered") return LevelMode::ordered;
  if (s == "levelset") return LevelMode::levelset;
  if (s == "clamp") return LevelMode::clamp;
  bad(sub(where, "mode"), "mode is \"ordered\", \"levelset\" or \"clamp\"");
}

SugenoMode sugeno_mode(const std::string& s, const std::string& where) {
  if (s == "generic") return SugenoMode::generic;
  if (s == "inf") return SugenoMode::inf;
  if (s == "levelset") return SugenoMode::levelset;
  bad(where, "Sugeno mode is \"generic\", \"inf\" or \"levelset\"");
}

DecompositionMethod method_from(const json& o, const std::string& where) {
  const std::string s = o.value("method", "lp_vertex");
  if (s == "partition_exact") return DecompositionMethod::partition_exact;
  if (s == "lp_vertex") return DecompositionMethod::lp_vertex;
  if (s == "grid") return DecompositionMethod::grid;
  bad(sub(where, "method"), "method is \"partition_exact\", \"lp_vertex\" or \"grid\"");
}

json normalize_operator(const json& j, GroundSet ground) {
  const std::string w = "operator";
  if (!j.is_object()) bad(w, "expected an operator object with an \"id\"");
  const std::string id = text(member(j, "id", w), sub(w, "id"));
  json out{{"id", id}};
  auto op = [&](const char* key) { out[key] = normalize_op(member(j, key, w), sub(w, key)); };
  auto fca = [&](const char* key, const char* fallback) {
    out[key] = j.contains(key) ? normalize_fca(j.at(key), sub(w, key)) : normalize_fca(json(fallback), sub(w, key));
  };
  if (id == "choquet") {
    const int form = j.contains("form") ? integer(j.at("form"), sub(w, "form")) : 1;
    if (form < 1 || form > 4) bad(sub(w, "form"), "form is 1, 2, 3 or 4");
    out["form"] = form;
  } else if (id == "cs") {
    const json& cfg = j.contains("config") ? j.at("config") : j;
    out["config"] = normalize_cs_config(cfg, ground, j.contains("config") ? sub(w, "config") : w);
  } else if (id == "sugeno" || id == "shilkret") {
    if (id == "sugeno") op("F");
    fca("A", "inf");
    const std::string mode = j.value("mode", "generic");
    sugeno_mode(mode, sub(w, "mode"));
    out["mode"] = mode;
  } else if (id == "fc" || id == "rc" || id == "fc_levelset" || id == "minmax_diff") {
    op("op");
  } else if (id == "d_choquet") {
    out["delta"] = normalize_delta(member(j, "delta", w), sub(w, "delta"));
    op("op");
  } else if (id == "cff") {
    out["pair"] = normalize_pair(member(j, "pair", w), sub(w, "pair"));
  } else if (id == "cc") {
    const json c = normalize_op(member(j, "copula", w), sub(w, "copula"));
    if (!c.get<std::string>().starts_with("copula:")) bad(sub(w, "copula"), "expected copula:M, copula:Pi or copula:W");
    out["copula"] = c;
  } else if (id == "decomposition") {
    op("F");
    out["system"] = normalize_system(j.contains("system") ? j.at("system") : json("part"), ground, sub(w, "system"));
  } else if (id == "lebesgue") {
    op("op");
    fca("A", "inf");
    if (j.contains("system")) out["system"] = normalize_system(j.at("system"), ground, sub(w, "system"));
  } else if (id == "lovasz") {
    op("op");
    fca("A", "inf");
  } else if (id == "ie") {
    op("op");
    fca("A", "inf");
    const std::string d = j.value("domain", "bounded");
    domain_from_string(d, sub(w, "domain"));
    out["domain"] = d;
  } else if (id == "p_variation") {
    const double p = number(member(j, "p", w), sub(w, "p"));
    if (p < 1) bad(sub(w, "p"), "p-variation needs p >= 1");
    out["p"] = p;
    fca("A", "inf");
    out["system"] = normalize_system(j.contains("system") ? j.at("system") : json("chain"), ground, sub(w, "system"));
    if (j.contains("relation")) {
      out["relation"] = normalize_relation(j.at("relation"), ground, sub(w, "relation"));
    } else {
      out["relation"] = out["system"].contains("system")
                            ? json(relation_name(default_relation(*tag_from_string(out["system"]["system"]))))
                            : json("diagonal");
    }
  } else {
    bad(sub(w, "id"), "unknown operator '" + id + "'; see the catalog subcommand");
  }
  return out;
}

json normalize_options(const json& j) {
  if (j.is_null()) return json::object();
  if (!j.is_object()) bad("options", "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!kOptionKeys.contains(k)) bad("options." + k, "unknown option");
  }
  json out = json::object();
  if (j.contains("policy")) {
    policy_from(j, "options");
    out["policy"] = j["policy"];
  }
  if (j.contains("mode")) {
    mode_from(j, "options");
    out["mode"] = j["mode"];
  }
  if (j.contains("method")) {
    method_from(j, "options");
    out["method"] = j["method"];
  }
  if (j.contains("step")) out["step"] = number(j["step"], "options.step");
  return out;
}

json ordered_report(const OperatorReport& r) {
  return json{{"value", round12(r.value)},   {"min", round12(r.min)},       {"max", round12(r.max)},
              {"well_defined", r.well_defined}, {"permutations", r.permutations}, {"order", r.order},
              {"terms", rounded(r.terms)}};
}

}  // namespace

const std::vector<CatalogEntry>& operator_catalog() { return kCatalog; }

SamplerClass sampler_from_string(const std::string& s, const std::string& where) {
  if (s == "monotone") return SamplerClass::monotone;
  if (s == "capacity") return SamplerClass::capacity;
  if (s == "symmetric") return SamplerClass::symmetric;
  if (s == "symmetric_capacity") return SamplerClass::symmetric_capacity;
  bad(where, "measure class is monotone, capacity, symmetric or symmetric_capacity");
}

FunctionDomain domain_from_string(const std::string& s, const std::string& where) {
  if (s == "bounded") return FunctionDomain::bounded;
  if (s == "unit") return FunctionDomain::unit;
  bad(where, "domain is \"bounded\" or \"unit\"");
}

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) bad("problem", "expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    static const std::set<std::string> keys{"n", "f", "mu", "muhat", "operator", "options"};
    if (!keys.contains(k)) bad(k, "unknown field");
  }
  ProblemFile p;
  const int n = integer(member(j, "n", ""), "n");
  p.ground = located("n", [&] { return GroundSet(n); });
  p.f = function_from_json(member(j, "f", ""), p.ground, "f");
  p.mu = measure_from_json(member(j, "mu", ""), "mu");
  if (p.mu.ground() != p.ground) bad("mu.n", "measure is on [" + std::to_string(p.mu.ground().n()) + "] but n = " + std::to_string(n));
  if (j.contains("muhat")) {
    p.muhat = set_function_from_json(j.at("muhat"), "muhat");
    if (p.muhat->ground() != p.ground) bad("muhat.n", "measure is on [" + std::to_string(p.muhat->ground().n()) + "] but n = " + std::to_string(n));
  }
  p.op = normalize_operator(member(j, "operator", ""), p.ground);
  p.options = normalize_options(j.contains("options") ? j.at("options") : json());
  return p;
}

json normalized_problem(const ProblemFile& p) {
  json out{{"n", p.ground.n()},
           {"f", std::vector<double>(p.f.values().begin(), p.f.values().end())},
           {"mu", measure_to_json(p.mu.set_function())},
           {"operator", p.op},
           {"options", p.options}};
  if (p.muhat) out["muhat"] = measure_to_json(*p.muhat);
  return out;
}

json evaluate(const ProblemFile& p, const EvalOverrides& ov) {
  json o = p.options;
  if (ov.policy) o["policy"] = *ov.policy;
  if (ov.mode) o["mode"] = *ov.mode;
  if (ov.method) o["method"] = *ov.method;
  o = normalize_options(o);

  const json& d = p.op;
  const std::string id = d["id"];
  const GroundSet g = p.ground;
  const auto& f = p.f;
  const auto& mu = p.mu;
  const SetFunction muhat_sf = p.muhat ? *p.muhat : mu.set_function();
  auto muhat_measure = [&] { return located("muhat", [&] { return MonotoneMeasure(muhat_sf); }); };
  const std::string w = "operator";

  json out{{"operator", id}};
  located(w, [&] {
    if (id == "choquet") {
      out["value"] = round12(choquet(f, mu, d["form"]));
    } else if (id == "cs") {
      const CSConfig cfg = build_cs_config(d["config"], g, sub(w, "config"));
      const CSReport r = cs_operator_report(cfg, f, mu, muhat_sf);
      out["value"] = round12(r.value);
      out["argmax_collection"] = subsets_json(r.argmax);
      out["collections"] = r.collections;
      json terms = json::array();
      for (const auto& t : r.terms) {
        terms.push_back(json{{"C", format_subset(t.c)}, {"D", format_subset(t.d)}, {"x", round12(t.x)}, {"y", round12(t.y)},
                             {"z", round12(t.z)}, {"w", round12(t.w)}, {"value", round12(t.value)}});
      }
      out["terms"] = terms;
    } else if (id == "sugeno" || id == "shilkret") {
      const BinaryOp F = id == "sugeno" ? build_op(d["F"], sub(w, "F")) : ops::product();
      const Fca a = build_fca(d["A"], g, sub(w, "A"));
      out["value"] = round12(upper_sugeno_like(F, a, f, mu, sugeno_mode(d["mode"], sub(w, "mode"))));
    } else if (id == "fc" || id == "rc") {
      const BinaryOp op = build_op(d["op"], sub(w, "op"));
      const auto r = id == "fc" ? fc_operator(op, f, mu, muhat_measure(), policy_from(o, "options"))
                                : rc_operator(op, f, mu, muhat_measure(), policy_from(o, "options"));
      out.update(ordered_report(r));
    } else if (id == "fc_levelset") {
      out["value"] = round12(fc_levelset(build_op(d["op"], sub(w, "op")), f, mu));
    } else if (id == "d_choquet") {
      out.update(ordered_report(d_choquet(build_delta(d["delta"], sub(w, "delta")), build_op(d["op"], sub(w, "op")), f, mu,
                                          policy_from(o, "options"), mode_from(o, "options"))));
    } else if (id == "cff" || id == "cc") {
      const FPair pair = id == "cff" ? build_pair(d["pair"], sub(w, "pair"))
                                     : FPair::make(ops::by_name(d["copula"]), ops::by_name(d["copula"]));
      if (id == "cc") {
        if (!f.in_unit_interval()) throw PreconditionError("the CC-integral takes f with values in [0,1]");
        if (!approx_eq(mu.total(), 1.0)) throw PreconditionError("the CC-integral takes a capacity (mu(X) = 1)");
      }
      out.update(ordered_report(cff_operator(pair, f, mu, policy_from(o, "options"), mode_from(o, "options"))));
    } else if (id == "decomposition") {
      const auto r = f_decomposition_direct(build_op(d["F"], sub(w, "F")), build_system(d["system"], g, sub(w, "system")), f, mu,
                                            method_from(o, "options"), o.value("step", 0.0));
      out["value"] = round12(r.value);
      out["argmax_collection"] = subsets_json(r.collection);
      out["coefficients"] = rounded(r.coefficients);
    } else if (id == "lebesgue") {
      std::optional<DecompositionSystem> sys;
      if (d.contains("system")) sys = build_system(d["system"], g, sub(w, "system"));
      out["value"] = round12(generalized_lebesgue(build_op(d["op"], sub(w, "op")), build_fca(d["A"], g, sub(w, "A")), f, mu, sys));
    } else if (id == "lovasz") {
      out["value"] = round12(lovasz_generalized(build_op(d["op"], sub(w, "op")), build_fca(d["A"], g, sub(w, "A")), f, mu));
    } else if (id == "ie") {
      const auto inter = InteractionOperator::make(build_fca(d["A"], g, sub(w, "A")), domain_from_string(d["domain"], sub(w, "domain")));
      out["value"] = round12(ie_operator(build_op(d["op"], sub(w, "op")), inter, f, mu));
    } else if (id == "minmax_diff") {
      out["value"] = round12(minmax_diff(build_op(d["op"], sub(w, "op")), f, mu));
    } else if (id == "p_variation") {
      out["value"] = round12(p_variation(d["p"], build_fca(d["A"], g, sub(w, "A")), f, build_system(d["system"], g, sub(w, "system")),
                                         build_relation(d["relation"], g, sub(w, "relation"))));
    }
    return 0;
  });
  return out;
}

std::string describe_eval(const json& r) {
  std::ostringstream os;
  os << r["operator"].get<std::string>() << " = " << format_number(r["value"].get<double>()) << "\n";
  if (r.contains("well_defined")) {
    os << "  orderings visited: " << r["permutations"].get<std::size_t>() << ", range [" << format_number(r["min"])
       << ", " << format_number(r["max"]) << "]" << (r["well_defined"].get<bool>() ? "" : "  (depends on the tie order)")
       << "\n";
  }
  if (r.contains("argmax_collection")) {
    os << "  argmax collection:";
    for (const auto& s : r["argmax_collection"]) os << " " << s.get<std::string>();
    os << "\n";
  }
  if (r.contains("coefficients")) {
    os << "  coefficients:";
    for (const auto& c : r["coefficients"]) os << " " << format_number(c);
    os << "\n";
  }
  if (r.contains("terms")) {
    os << "  terms:\n";
    for (const auto& t : r["terms"]) {
      if (t.is_object()) {
        os << "    C=" << t["C"].get<std::string>() << " D=" << t["D"].get<std::string>() << "  L(" << format_number(t["x"])
           << ", " << format_number(t["y"]) << ", " << format_number(t["z"]) << ", " << format_number(t["w"])
           << ") = " << format_number(t["value"]) << "\n";
      } else {
        os << "    " << format_number(t) << "\n";
      }
    }
  }
  return os.str();
}

// ------------------------------------------------------------------------------------------------
// Law reports and manifests

json instance_to_json(const Instance& in) {
  json j{{"n", in.n}, {"f", in.f}, {"mu", in.mu}, {"specimen", in.specimen}};
  if (in.muhat != in.mu) j["muhat"] = in.muhat;
  if (!in.g.empty()) j["g"] = in.g;
  if (in.scalar != 0) j["scalar"] = in.scalar;
  return j;
}

Instance instance_from_json(const json& j, const std::string& where) {
  Instance in;
  in.n = integer(member(j, "n", where), sub(where, "n"));
  in.f = member(j, "f", where).get<std::vector<double>>();
  in.mu = member(j, "mu", where).get<std::vector<double>>();
  in.muhat = j.contains("muhat") ? j.at("muhat").get<std::vector<double>>() : in.mu;
  if (j.contains("g")) in.g = j.at("g").get<std::vector<double>>();
  in.scalar = j.value("scalar", 0.0);
  in.specimen = j.value("specimen", std::size_t{0});
  return in;
}

json law_report_to_json(const LawReport& r) {
  json hyps = json::array();
  for (const auto& h : r.hypotheses) {
    json x{{"name", h.name}, {"holds", h.holds}, {"probes", h.probes}};
    if (!h.holds) {
      x["point"] = rounded(h.point);
      x["lhs"] = round12(h.lhs);
      x["rhs"] = round12(h.rhs);
      if (!h.detail.empty()) x["detail"] = h.detail;
    }
    hyps.push_back(x);
  }
  json j{{"law", r.law},
         {"verdict", to_string(r.verdict)},
         {"mode", r.mode},
         {"trials", r.trials},
         {"seed", r.seed},
         {"max_discrepancy", round12(r.max_discrepancy)},
         {"specimens", r.specimens},
         {"hypotheses", hyps},
         {"note", r.note}};
  if (r.witness) {
    json cmp = json::array();
    for (const auto& c : r.witness->comparisons) {
      cmp.push_back(json{{"label", c.label}, {"lhs", round12(c.lhs)}, {"rhs", round12(c.rhs)}, {"ok", c.ok}, {"gap", round12(c.gap)}});
    }
    j["witness"] = json{{"index", r.witness->index}, {"instance", instance_to_json(r.witness->instance)}, {"comparisons", cmp}};
  }
  return j;
}

namespace {

void read_sweep(const json& e, const std::string& w, SweepConfig& s) {
  if (e.contains("ns")) s.ns = e["ns"].get<std::vector<int>>();
  if (e.contains("trials")) s.trials = integer(e["trials"], sub(w, "trials"));
  if (e.contains("ops")) {
    s.ops.clear();
    for (std::size_t i = 0; i < e["ops"].size(); ++i) s.ops.push_back(normalize_op(e["ops"][i], idx(sub(w, "ops"), i)));
  }
  if (e.contains("deltas")) {
    s.deltas.clear();
    for (std::size_t i = 0; i < e["deltas"].size(); ++i) s.deltas.push_back(normalize_delta(e["deltas"][i], idx(sub(w, "deltas"), i)));
  }
  if (e.contains("pairs")) {
    s.pairs.clear();
    for (std::size_t i = 0; i < e["pairs"].size(); ++i) {
      const std::string pw = idx(sub(w, "pairs"), i);
      const json& p = e["pairs"][i];
      s.pairs.emplace_back(normalize_op(member(p, "F1", pw), sub(pw, "F1")), normalize_op(member(p, "F2", pw), sub(pw, "F2")));
    }
  }
  if (e.contains("measure")) s.measure = sampler_from_string(text(e["measure"], sub(w, "measure")), sub(w, "measure"));
  if (e.contains("tolerance")) s.tolerance = number(e["tolerance"], sub(w, "tolerance"));
  if (e.contains("hunt_gap")) s.hunt_gap = number(e["hunt_gap"], sub(w, "hunt_gap"));
}

}  // namespace

Manifest parse_manifest(const json& j) {
  if (!j.is_object()) bad("manifest", "expected a JSON object");
  Manifest m;
  if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
  const json defaults = j.value("defaults", json::object());
  if (j.contains("laws")) {
    const json& laws = j["laws"];
    for (std::size_t i = 0; i < laws.size(); ++i) {
      const std::string w = idx("laws", i);
      const json& e = laws[i];
      ManifestEntry me;
      me.source = e;
      me.law = text(member(e, "law", w), sub(w, "law"));
      const auto& ids = equivalence_law_ids();
      if (std::find(ids.begin(), ids.end(), me.law) == ids.end()) bad(sub(w, "law"), "unknown law '" + me.law + "'");
      me.name = e.value("name", me.law);
      me.expect = located(sub(w, "expect"), [&] { return verdict_from_string(text(member(e, "expect", w), sub(w, "expect"))); });
      me.hunt = e.value("hunt", false);
      me.sweep.seed = m.seed;
      read_sweep(defaults, "defaults", me.sweep);
      read_sweep(e, w, me.sweep);
      m.entries.push_back(std::move(me));
    }
  }
  if (j.contains("properties")) {
    const json& props = j["properties"];
    for (std::size_t i = 0; i < props.size(); ++i) {
      const std::string w = idx("properties", i);
      const json& e = props[i];
      ManifestEntry me;
      me.source = e;
      me.is_property = true;
      me.law = text(member(e, "property", w), sub(w, "property"));
      located(sub(w, "property"), [&] { return operator_property_from_string(me.law); });
      me.name = e.value("name", me.law);
      me.expect = located(sub(w, "expect"), [&] { return verdict_from_string(text(member(e, "expect", w), sub(w, "expect"))); });
      PropertySweep& ps = me.property;
      ps.config = cs_config_factory(member(e, "config", w), sub(w, "config"));
      ps.label = me.name;
      ps.seed = m.seed;
      if (e.contains("measure")) ps.measure = sampler_from_string(text(e["measure"], sub(w, "measure")), sub(w, "measure"));
      if (e.contains("domain")) ps.domain = domain_from_string(text(e["domain"], sub(w, "domain")), sub(w, "domain"));
      if (e.contains("ns")) ps.ns = e["ns"].get<std::vector<int>>();
      if (e.contains("trials")) ps.trials = integer(e["trials"], sub(w, "trials"));
      if (e.contains("tolerance")) ps.tolerance = number(e["tolerance"], sub(w, "tolerance"));
      m.entries.push_back(std::move(me));
    }
  }
  return m;
}

}  // namespace csl::io
