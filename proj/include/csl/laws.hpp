#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csl/csop.hpp"
#include "csl/integrals.hpp"
#include "csl/setfn.hpp"

namespace csl {

enum class Verdict { holds_on_sample, refuted_with_witness, precondition_unmet };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Outcome of sampling one quantified inequality or identity.
struct ConditionReport {
  std::string name;
  bool holds = true;
  int probes = 0;
  std::vector<double> point;  ///< the violating arguments, in the order the condition names them
  double lhs = 0, rhs = 0;
  std::string detail;
};

enum class ConditionKind {
  section_subadditive,    ///< a o (x + y) <= a o x + a o y
  triangle,               ///< delta(x3, x1) o y <= delta(x2, x1) o y + delta(x3, x2) o y for x1 <= x2 <= x3
  n3h,                    ///< delta(x2, 0) o y <= delta(x1, 0) o y + delta(x2, x1) o y for x1 <= x2
  pairwise_2_increasing,  ///< F1(x1, y2) - F2(x1, y1) <= F1(x2, y2) - F2(x2, y1) on rectangles
  zero_section,           ///< 0 o a = 0 for all a
  nondecreasing,          ///< nondecreasing in both arguments
  product_form,           ///< a o b = g(a) b with g(0) = 0
  zero_at_zero,           ///< 0 o 0 = 0
  second_vanishes_at_zero,  ///< F2(0, b) = 0
  equal_pair,             ///< F1 = F2
};

const char* to_string(ConditionKind k);

/// Everything a condition may refer to; unused members are ignored.
struct ConditionSubject {
  std::optional<BinaryOp> op;
  std::optional<Dissimilarity> delta;
  std::optional<BinaryOp> f1;
  std::optional<BinaryOp> f2;
};

/// Probes the condition on a k/8 grid followed by `random_probes` random points.
ConditionReport check_condition(ConditionKind kind, const ConditionSubject& subject, int random_probes = 2000,
                                std::uint64_t seed = 1);

/// One sampled input of a law: point functions, measures (values in subset-index order) and a scalar.
struct Instance {
  int n = 0;
  std::vector<double> f;
  std::vector<double> g;
  std::vector<double> mu;
  std::vector<double> muhat;
  double scalar = 0;
  std::size_t specimen = 0;  ///< which operation, pair or interaction of the sweep
};

/// One side-by-side comparison evaluated on an instance.
struct Comparison {
  std::string label;
  double lhs = 0;
  double rhs = 0;
  bool ok = true;
  double gap = 0;  ///< lhs - rhs
};

struct LawWitness {
  std::size_t index = 0;  ///< position in the canonical instance stream
  Instance instance;
  std::vector<Comparison> comparisons;
};

struct LawReport {
  std::string law;
  Verdict verdict = Verdict::holds_on_sample;
  std::string mode;  ///< "sweep" (conclusion asserted), "hunt" (searching for a refutation), or "fixed"
  std::vector<ConditionReport> hypotheses;
  std::optional<LawWitness> witness;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_discrepancy = 0;
  std::vector<std::string> specimens;
  std::string note;
};

/// Sweep settings. Empty vectors select the law's defaults.
struct SweepConfig {
  std::vector<int> ns;
  int trials = 500;
  std::uint64_t seed = 1;
  unsigned threads = 0;  ///< 0 picks default_thread_count()
  std::vector<std::string> ops;
  std::vector<std::string> deltas;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::optional<SamplerClass> measure;  ///< overrides the law's measure class
  double tolerance = kEps;
  double hunt_gap = 1e-6;  ///< a refutation needs a gap beyond this
};

/// CSL_THREADS when set, otherwise the hardware concurrency.
unsigned default_thread_count();

/// Identifiers accepted by verify_equivalence and find_counterexample.
const std::vector<std::string>& equivalence_law_ids();

/// Runs one equivalence law. When its characterizing condition holds the conclusion is asserted
/// on every instance; when it fails for an iff statement or for a law with a known failure
/// mode, the sweep hunts for a strict mismatch instead. Standing hypotheses that fail give
/// precondition_unmet.
LawReport verify_equivalence(const std::string& law, const SweepConfig& cfg);

/// Searches for a mismatch regardless of the hypotheses.
LawReport find_counterexample(const std::string& law, const SweepConfig& cfg);

/// Recomputes both sides of a law on a stored instance.
std::vector<Comparison> replay(const std::string& law, const SweepConfig& cfg, const Instance& instance);

enum class OperatorProperty { zero, monotone, homogeneous, subadditive, convex, idempotent };

const char* to_string(OperatorProperty p);
OperatorProperty operator_property_from_string(const std::string& s);

using ConfigFactory = std::function<CSConfig(GroundSet)>;

struct PropertySweep {
  ConfigFactory config;
  std::string label;
  SamplerClass measure = SamplerClass::capacity;
  FunctionDomain domain = FunctionDomain::bounded;
  std::vector<int> ns{2, 3, 4};
  int trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  double tolerance = kEps;
};

/// Checks the hypotheses of the property on the configured L and aggregation families and,
/// when they pass, tests the conclusion on random inputs with mu = muhat.
LawReport check_operator_property(OperatorProperty property, const PropertySweep& sweep);

/// Recomputes the conclusion of a property on a stored instance.
std::vector<Comparison> replay_property(OperatorProperty property, const PropertySweep& sweep,
                                        const Instance& instance);

/// The symmetric measure D -> g[|D|] with g[k] = num[k] / 8.
MonotoneMeasure symmetric_grid_measure(GroundSet ground, const std::vector<int>& numerators);

/// Every nondecreasing numerator vector (g[1..n], g[0] = 0) with entries in [0, top].
/// top = 16 spans [0, 2]; capacities fix g[n] = 8.
std::vector<std::vector<int>> symmetric_grid(int n, int top, bool capacity);

}  // namespace csl
