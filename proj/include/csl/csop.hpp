#pragma once

#include <optional>
#include <vector>

#include "csl/condagg.hpp"
#include "csl/decomp.hpp"
#include "csl/ops.hpp"
#include "csl/setfn.hpp"

namespace csl {

/// Everything the Choquet-Sugeno-like operator needs besides (f, mu, muhat).
struct CSConfig {
  DecompositionSystem system;
  RelationSpec relation;
  LFunction L;
  Fca a;     ///< aggregates on the first coordinate C of each pair
  Fca ahat;  ///< aggregates on the second coordinate D of each pair
};

struct CSTerm {
  Subset c;
  Subset d;
  double x = 0, y = 0, z = 0, w = 0;
  double value = 0;
};

struct CSReport {
  double value = 0;
  /// First collection (canonical order) whose sum is within tolerance of the supremum.
  std::vector<Subset> argmax;
  std::vector<CSTerm> terms;
  std::size_t collections = 0;
};

/// sup over collections D in H of sum over (C, D') in R of L(A(f|C), A^(f|D'), mu(C), muhat(D')).
/// A(.|{}) = 0 and muhat({}) = 0; pairs may be any subsets of X.
double cs_operator(const CSConfig& cfg, const PointFunction& f, const MonotoneMeasure& mu,
                   const SetFunction& muhat);
inline double cs_operator(const CSConfig& cfg, const PointFunction& f, const MonotoneMeasure& mu) {
  return cs_operator(cfg, f, mu, mu.set_function());
}
CSReport cs_operator_report(const CSConfig& cfg, const PointFunction& f, const MonotoneMeasure& mu,
                            const SetFunction& muhat);

/// Sum over the relation of one collection.
double cs_collection_sum(const CSConfig& cfg, const Collection& c, const PointFunction& f, const MonotoneMeasure& mu,
                         const SetFunction& muhat, std::vector<CSTerm>* terms = nullptr);

enum class SugenoMode { generic, inf, levelset };

/// sup over nonempty D of F(A(f|D), mu(D)). `inf` mode uses A^inf regardless of `a`;
/// `levelset` mode is max_i F(f_(i), mu(B_(i))) and requires F nondecreasing.
double upper_sugeno_like(const BinaryOp& F, const Fca& a, const PointFunction& f, const MonotoneMeasure& mu,
                         SugenoMode mode = SugenoMode::generic);

/// max_i F(f_(i), mu(B_(i))) along the canonical ascending order, for any F.
double sugeno_levelset_value(const BinaryOp& F, const PointFunction& f, const MonotoneMeasure& mu);

/// sup over collections of sum over blocks of A(f|D) (x) mu(D); defaults to all partitions.
/// Meant for nondecreasing (x); see check_nondecreasing.
double generalized_lebesgue(const BinaryOp& op, const Fca& a, const PointFunction& f, const MonotoneMeasure& mu,
                            const std::optional<DecompositionSystem>& system = std::nullopt);

/// Sum over nonempty D of A(f|D) o Mob_mu(D).
double lovasz_generalized(const BinaryOp& op, const Fca& a, const PointFunction& f, const MonotoneMeasure& mu);

/// Sum over nonempty D of (min_D f - max_{D^c} f)_+ o mu(D), with the max over {} equal to 0.
double minmax_diff(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu);

/// sup over collections of sum over related pairs of |A(f|C) - A(f|D)|^p.
double p_variation(double p, const Fca& a, const PointFunction& f, const DecompositionSystem& system,
                   const RelationSpec& relation);

}  // namespace csl
