#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csl/error.hpp"
#include "csl/io.hpp"
#include "csl/laws.hpp"

#ifndef CSL_DEFAULT_MANIFEST
#define CSL_DEFAULT_MANIFEST "manifests/default.json"
#endif

namespace {

using csl::io::json;

enum Exit { kOk = 0, kUnmet = 1, kBadInput = 2, kEvalError = 3 };

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw csl::MalformedInput(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw csl::MalformedInput(path + ": " + e.what());
  }
}

std::string manifest_path(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv("CSL_MANIFEST")) return env;
  if (std::filesystem::exists("manifests/default.json")) return "manifests/default.json";
  return CSL_DEFAULT_MANIFEST;
}

void print_witness(const csl::LawReport& r) {
  if (!r.witness) return;
  const auto& in = r.witness->instance;
  const char* head = r.verdict == csl::Verdict::refuted_with_witness ? "witness" : "instance";
  std::printf("    %s #%zu  n=%d  specimen=%s\n", head, r.witness->index, in.n,
              in.specimen < r.specimens.size() ? r.specimens[in.specimen].c_str() : "?");
  std::printf("      f =");
  for (double x : in.f) std::printf(" %s", csl::io::format_number(x).c_str());
  if (!in.g.empty()) {
    std::printf("\n      g =");
    for (double x : in.g) std::printf(" %s", csl::io::format_number(x).c_str());
  }
  std::printf("\n      mu =");
  for (std::size_t b = 0; b < in.mu.size(); ++b) {
    std::printf(" %s:%s", csl::Subset(static_cast<std::uint32_t>(b)).to_string().c_str(), csl::io::format_number(in.mu[b]).c_str());
  }
  if (in.muhat != in.mu) {
    std::printf("\n      muhat =");
    for (std::size_t b = 0; b < in.muhat.size(); ++b) {
      std::printf(" %s:%s", csl::Subset(static_cast<std::uint32_t>(b)).to_string().c_str(), csl::io::format_number(in.muhat[b]).c_str());
    }
  }
  if (in.scalar != 0) std::printf("\n      scalar = %s", csl::io::format_number(in.scalar).c_str());
  std::printf("\n");
  for (const auto& c : r.witness->comparisons) {
    std::printf("      %s: %s vs %s%s\n", c.label.c_str(), csl::io::format_number(c.lhs).c_str(),
                csl::io::format_number(c.rhs).c_str(), c.ok ? "" : "  <- differs");
  }
}

void print_report(const std::string& name, const csl::LawReport& r, const std::optional<csl::Verdict>& expect) {
  const bool met = !expect || *expect == r.verdict;
  std::printf("%s %s: %s", expect ? (met ? "PASS" : "FAIL") : "----", name.c_str(), csl::to_string(r.verdict));
  if (expect && !met) std::printf(" (expected %s)", csl::to_string(*expect));
  std::printf("  [%s, %d instances, seed %llu]\n", r.mode.c_str(), r.trials, static_cast<unsigned long long>(r.seed));
  for (const auto& h : r.hypotheses) {
    if (h.holds) continue;
    std::printf("    condition fails: %s", h.name.c_str());
    if (!h.point.empty()) {
      std::printf(" at (");
      for (std::size_t i = 0; i < h.point.size(); ++i) std::printf("%s%s", i ? ", " : "", csl::io::format_number(h.point[i]).c_str());
      std::printf(")");
    }
    if (!h.detail.empty()) std::printf(" %s", h.detail.c_str());
    std::printf("\n");
  }
  print_witness(r);
  std::printf("    %s\n", r.note.c_str());
}

int cmd_eval(const std::string& path, bool as_json, bool dump, const csl::io::EvalOverrides& ov) {
  const csl::io::ProblemFile p = csl::io::parse_problem(read_json(path));
  if (dump) {
    json n = csl::io::normalized_problem(p);
    if (ov.policy) n["options"]["policy"] = *ov.policy;
    if (ov.mode) n["options"]["mode"] = *ov.mode;
    if (ov.method) n["options"]["method"] = *ov.method;
    std::cout << n.dump(2) << "\n";
    return kOk;
  }
  const json report = csl::io::evaluate(p, ov);
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << csl::io::describe_eval(report);
  }
  return kOk;
}

struct VerifyArgs {
  std::string manifest;
  std::vector<std::string> laws;
  std::optional<std::uint64_t> seed;
  std::vector<int> ns;
  std::vector<std::string> ops;
  std::vector<std::string> deltas;
  std::optional<int> trials;
  bool hunt = false;
  bool as_json = false;
  unsigned threads = 0;
};

csl::LawReport run_entry(const csl::io::ManifestEntry& e) {
  if (e.is_property) return csl::check_operator_property(csl::operator_property_from_string(e.law), e.property);
  return e.hunt ? csl::find_counterexample(e.law, e.sweep) : csl::verify_equivalence(e.law, e.sweep);
}

int cmd_verify(const VerifyArgs& a) {
  const csl::io::Manifest m = csl::io::parse_manifest(read_json(manifest_path(a.manifest)));
  std::vector<csl::io::ManifestEntry> run;
  std::vector<std::optional<csl::Verdict>> expects;
  const bool overridden = !a.ops.empty() || !a.deltas.empty() || a.hunt;

  auto apply = [&](csl::io::ManifestEntry e) {
    if (a.seed) {
      e.sweep.seed = *a.seed;
      e.property.seed = *a.seed;
    }
    if (!a.ns.empty()) {
      e.sweep.ns = a.ns;
      e.property.ns = a.ns;
    }
    if (a.trials) {
      e.sweep.trials = *a.trials;
      e.property.trials = *a.trials;
    }
    if (!a.ops.empty()) e.sweep.ops = a.ops;
    if (!a.deltas.empty()) e.sweep.deltas = a.deltas;
    if (a.hunt) e.hunt = true;
    if (overridden && !e.is_property) e.name = e.law;
    e.sweep.threads = a.threads;
    e.property.threads = a.threads;
    expects.push_back(overridden && !e.is_property ? std::nullopt : std::optional<csl::Verdict>(e.expect));
    run.push_back(std::move(e));
  };

  if (a.laws.empty()) {
    for (const auto& e : m.entries) apply(e);
  } else {
    for (const auto& law : a.laws) {
      bool found = false;
      for (const auto& e : m.entries) {
        if (e.law != law && e.name != law) continue;
        if (overridden && e.is_property) continue;
        if (overridden && found) continue;  // one run per law when the specimens are overridden
        found = true;
        apply(e);
      }
      if (!found) {
        const auto& ids = csl::equivalence_law_ids();
        if (std::find(ids.begin(), ids.end(), law) == ids.end()) throw csl::MalformedInput("--law: unknown law '" + law + "'");
        csl::io::ManifestEntry e;
        e.law = e.name = law;
        e.sweep.seed = m.seed;
        apply(e);
        expects.back() = std::nullopt;
      }
    }
  }

  bool all_met = true;
  for (std::size_t i = 0; i < run.size(); ++i) {
    const csl::LawReport r = run_entry(run[i]);
    const bool met = !expects[i] || *expects[i] == r.verdict;
    all_met = all_met && met;
    if (a.as_json) {
      json j = csl::io::law_report_to_json(r);
      j["name"] = run[i].name;
      if (expects[i]) j["expected"] = csl::to_string(*expects[i]);
      j["expectation_met"] = met;
      std::cout << j.dump() << "\n";
    } else {
      print_report(run[i].name, r, expects[i]);
    }
    std::fflush(stdout);
  }
  return all_met ? kOk : kUnmet;
}

int cmd_catalog(bool as_json) {
  const auto& cat = csl::io::operator_catalog();
  if (as_json) {
    json a = json::array();
    for (const auto& c : cat) a.push_back(json{{"id", c.id}, {"parameters", c.parameters}, {"description", c.description}});
    std::cout << a.dump(2) << "\n";
    return kOk;
  }
  for (const auto& c : cat) std::printf("%-14s %-48s %s\n", c.id.c_str(), ("(" + c.parameters + ")").c_str(), c.description.c_str());
  std::printf("\noperations:");
  for (const auto& n : csl::ops::names()) std::printf(" %s", n.c_str());
  std::printf(" scale(c,NAME)\ndissimilarities: abs sq sqrt\n");
  std::printf("laws:");
  for (const auto& id : csl::equivalence_law_ids()) std::printf(" %s", id.c_str());
  std::printf("\nproperties: zero monotone homogeneous subadditive convex idempotent\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choquet-Sugeno-like operators: evaluation and law verification"};
  app.require_subcommand(1);
  bool as_json = false;
  unsigned threads = 0;
  app.add_flag("--json", as_json, "print JSON on stdout");
  app.add_option("--threads", threads, "worker threads for sweeps (default: CSL_THREADS or the hardware concurrency)");

  auto* eval = app.add_subcommand("eval", "evaluate the operator described by a problem file");
  std::string problem;
  bool dump = false;
  csl::io::EvalOverrides ov;
  eval->add_option("problem", problem, "problem file (JSON)")->required();
  eval->add_flag("--dump-normalized", dump, "print the normalized problem file instead of evaluating");
  eval->add_option("--policy", ov.policy, "tie policy: canonical or all");
  eval->add_option("--mode", ov.mode, "ordered, levelset or clamp");
  eval->add_option("--method", ov.method, "decomposition method: partition_exact, lp_vertex or grid");
  eval->add_flag("--json", as_json, "print JSON on stdout");

  auto* verify = app.add_subcommand("verify", "run the laws and properties of a manifest");
  VerifyArgs va;
  verify->add_option("manifest", va.manifest, "manifest file (default: the shipped manifest)");
  verify->add_option("--law", va.laws, "run only these laws or entry names");
  verify->add_option("--seed", va.seed, "override the manifest seed");
  verify->add_option("--n", va.ns, "ground-set sizes")->delimiter(',');
  verify->add_option("--op", va.ops, "operations under test (drops the manifest expectation)");
  verify->add_option("--delta", va.deltas, "dissimilarities under test (drops the manifest expectation)");
  verify->add_option("--trials", va.trials, "instances per size and specimen");
  verify->add_flag("--hunt", va.hunt, "search for a counterexample regardless of the hypotheses");
  verify->add_flag("--json", as_json, "print one JSON report per line");
  verify->add_option("--threads", threads, "worker threads");

  auto* catalog = app.add_subcommand("catalog", "list operators, operations and laws");
  catalog->add_flag("--json", as_json, "print JSON on stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return cmd_eval(problem, as_json, dump, ov);
    if (verify->parsed()) {
      va.as_json = as_json;
      va.threads = threads;
      return cmd_verify(va);
    }
    if (catalog->parsed()) return cmd_catalog(as_json);
  } catch (const csl::MalformedInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const csl::GroundMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const csl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kEvalError;
  }
  return kOk;
}
