#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "csl/setfn.hpp"

namespace csl {

/// A family of conditional aggregation operators A(. | D), one per conditional set D.
///
/// The value on the empty conditional set is always 0. Built-in families depend only on
/// the values of f inside D; custom evaluators are expected to do the same, and
/// check_condagg_axioms probes for it.
class Fca {
 public:
  using Evaluator = std::function<double(const PointFunction& f, Subset d)>;

  Fca(GroundSet ground, std::string label, Evaluator eval);

  double operator()(const PointFunction& f, Subset d) const;

  const GroundSet& ground() const { return ground_; }
  const std::string& label() const { return label_; }

 private:
  GroundSet ground_;
  std::string label_;
  Evaluator eval_;
};

enum class FcaKind { inf, sup, prod, sum, mean, pnorm, lukasiewicz };

/// Builds a built-in family. `p` is the exponent of pnorm and must be >= 1.
Fca make_fca(FcaKind kind, GroundSet ground, double p = 1.0);

/// alpha * A(f | D).
Fca scale_fca(double alpha, const Fca& inner);
/// A(f | D)^q, q > 0.
Fca power_fca(double q, const Fca& inner);
/// min(cap, A(f | D)).
Fca cap_fca(double cap, const Fca& inner);

double eval_condagg(const Fca& a, const PointFunction& f, Subset d);

/// A probe that falsified an axiom or property.
struct ProbeWitness {
  Subset d;
  Subset e;  ///< second set for set-comparison properties
  std::vector<double> f;
  std::vector<double> g;
  double scalar = 0.0;  ///< the alpha, lambda, or b that was used
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

struct AxiomReport {
  bool c1_ok = true;
  bool c2_ok = true;
  int trials = 0;
  std::optional<ProbeWitness> witness;
};

/// Randomized monotonicity probes on every conditional set plus the exact
/// A(1_{D^c} | D) = 0 check on each nonempty D.
AxiomReport check_condagg_axioms(const Fca& a, int trials, std::uint64_t seed,
                                 FunctionDomain domain = FunctionDomain::bounded);

enum class FcaProperty { conjunctive, homogeneous, subadditive, convex, idempotent, interaction_i1, interaction_i3 };

const char* to_string(FcaProperty p);

struct PropertyReport {
  FcaProperty property{};
  bool holds = true;
  int trials = 0;
  std::optional<ProbeWitness> witness;
};

PropertyReport check_fca_property(const Fca& a, FcaProperty property, int trials, std::uint64_t seed,
                                  FunctionDomain domain = FunctionDomain::bounded);

}  // namespace csl
