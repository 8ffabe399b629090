#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "csl/condagg.hpp"
#include "csl/decomp.hpp"
#include "csl/ops.hpp"
#include "csl/setfn.hpp"

namespace csl {

/// The four classical expressions of the discrete Choquet integral:
/// 1 = sum f_(i) (mu(B_(i)) - mu(B_(i+1))), 2 = sum (f_(i) - f_(i-1)) mu(B_(i)),
/// 3 = sum (f_(i) mu(B_(i)) - f_(i-1) mu(B_(i))), 4 = sum over D of Mob(D) min_D f.
double choquet(const PointFunction& f, const MonotoneMeasure& mu, int form = 1);

/// `canonical` uses the stable ascending order; `all` visits every ordering that permutes
/// points with equal values.
enum class PermutationPolicy { canonical, all };

/// Upper bound on the number of admissible orderings visited under PermutationPolicy::all.
inline constexpr std::size_t kMaxPermutations = 1'000'000;

/// Visits every ascending-value-compatible ordering of the points (1-based labels).
/// Values within kEps count as ties.
void for_each_admissible_order(const PointFunction& f, PermutationPolicy policy,
                               const std::function<void(const std::vector<int>&)>& visit);

struct OperatorReport {
  double value = 0;  ///< canonical-order value
  double min = 0;    ///< over the visited orderings
  double max = 0;
  bool well_defined = true;
  std::size_t permutations = 1;
  std::vector<int> order;     ///< canonical ordering, ascending
  std::vector<double> terms;  ///< canonical per-index terms
};

/// sum f_(i) o (mu(B_(i)) - muhat(B_(i+1))); requires mu >= muhat.
OperatorReport fc_operator(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu,
                           const MonotoneMeasure& muhat, PermutationPolicy policy = PermutationPolicy::canonical);

/// sum f_(i) o (mu({f >= f_(i)}) - mu({f >= f_(i+1)})). Agrees with fc_operator(op, f, mu, mu)
/// when a o b = g(a) b with g(0) = 0; computed for any op so that mismatches can be shown.
double fc_levelset(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu);

/// sum f_(i) o (mu(C_(i)) - muhat(C_(i-1))) with C_(i) = {(1), ..., (i)}; requires mu >= muhat.
OperatorReport rc_operator(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu,
                           const MonotoneMeasure& muhat, PermutationPolicy policy = PermutationPolicy::canonical);

/// Measures (nu, nuhat) with rc(op, f, mu, muhat) = fc(op, f, nu, nuhat):
/// nu(D) = muhat(X) - muhat(D^c), nuhat(D) = mu(X) - mu(D^c). Requires mu(X) = muhat(X).
std::pair<MonotoneMeasure, MonotoneMeasure> reverse_dual_pair(const MonotoneMeasure& mu, const MonotoneMeasure& muhat);

enum class LevelMode { ordered, levelset, clamp };

/// sum delta(f_(i), f_(i-1)) o mu(B_(i)) with f_(0) = 0; levelset mode replaces B_(i) by
/// {f >= f_(i)}. clamp is not accepted here.
OperatorReport d_choquet(const Dissimilarity& delta, const BinaryOp& op, const PointFunction& f,
                         const MonotoneMeasure& mu, PermutationPolicy policy = PermutationPolicy::canonical,
                         LevelMode mode = LevelMode::ordered);

/// sum F1(f_(i), mu(B_(i))) - F2(f_(i-1), mu(B_(i))); levelset uses {f >= f_(i)}; clamp
/// reports min(1, ordered).
OperatorReport cff_operator(const FPair& pair, const PointFunction& f, const MonotoneMeasure& mu,
                            PermutationPolicy policy = PermutationPolicy::canonical, LevelMode mode = LevelMode::ordered);

enum class DecompositionMethod { partition_exact, lp_vertex, grid };

/// Largest collection the vertex enumerator accepts.
inline constexpr std::size_t kMaxLpVariables = 8;
/// Largest number of grid points the grid method visits per collection.
inline constexpr std::size_t kMaxGridPoints = 5'000'000;

struct DecompositionResult {
  double value = 0;
  std::vector<Subset> collection;  ///< maximizing collection
  std::vector<double> coefficients;  ///< a_D per member of that collection
};

/// sup over collections D of sup { sum F(a_D, mu(D)) : a >= 0, sum a_D 1_D <= f }.
/// partition_exact: collections must be partitions and F nondecreasing; a_D = min_D f.
/// lp_vertex: F must be the product; maximizes the linear program exactly by vertex enumeration.
/// grid: a_D on multiples of `step`; a lower bound.
DecompositionResult f_decomposition_direct(const BinaryOp& F, const DecompositionSystem& system,
                                           const PointFunction& f, const MonotoneMeasure& mu,
                                           DecompositionMethod method, double step = 0.0);

/// A conditional aggregation family validated as an extended interaction operator:
/// conjunctive, I(f|{i}) = f(i), antitone in the conditional set, and monotone in f.
class InteractionOperator {
 public:
  static InteractionOperator make(const Fca& a, FunctionDomain domain = FunctionDomain::bounded, int trials = 200,
                                  std::uint64_t seed = 1);

  const Fca& fca() const { return a_; }
  FunctionDomain domain() const { return domain_; }

 private:
  InteractionOperator(Fca a, FunctionDomain domain) : a_(std::move(a)), domain_(domain) {}
  Fca a_;
  FunctionDomain domain_;
};

/// sum over nonempty D of I(f, D) o Mob(D). Rejects f outside [0,1] when the operator was
/// validated on the unit domain.
double ie_operator(const BinaryOp& op, const InteractionOperator& interaction, const PointFunction& f,
                   const MonotoneMeasure& mu);

}  // namespace csl
