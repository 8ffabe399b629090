#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace csl {

/// Declared domain of a binary operation; used for grid-based validation.
enum class OpDomain { nonneg, unit };

/// Grid used to validate opaque evaluators on a declared domain. Nonnegative domains
/// are probed on [0, kNonnegProbeTop].
inline constexpr double kNonnegProbeTop = 4.0;
inline constexpr int kProbeGridSide = 101;

/// A binary fusion a o b. Evaluators may receive a signed second argument when used with
/// Mobius values.
class BinaryOp {
 public:
  using Fn = std::function<double(double, double)>;

  BinaryOp(std::string label, Fn fn, OpDomain domain = OpDomain::nonneg)
      : label_(std::move(label)), fn_(std::move(fn)), domain_(domain) {}

  double operator()(double a, double b) const { return fn_(a, b); }
  const std::string& label() const { return label_; }
  OpDomain domain() const { return domain_; }

 private:
  std::string label_;
  Fn fn_;
  OpDomain domain_;
};

namespace ops {
BinaryOp min();
BinaryOp max();
BinaryOp product();
BinaryOp sum();
/// a o x = a * x^2; superadditive in x.
BinaryOp a_times_x_squared();
/// a o x = a * min(x, 1).
BinaryOp a_times_min_x_1();
/// a o b = g(a) * b.
BinaryOp g_times(std::string g_label, std::function<double(double)> g);
/// a o b = a * |1 - b|; not monotone in b.
BinaryOp a_times_abs_1_minus_b();
BinaryOp copula_m();
BinaryOp copula_pi();
BinaryOp copula_w();
/// c * inner(a, b).
BinaryOp scaled(double c, const BinaryOp& inner);

/// Looks up a built-in by label: min, max, prod, sum, a*x^2, a*min(x,1), a*|1-b|, copula:M,
/// copula:Pi, copula:W, g*b[sq], g*b[zero], and scale(c,NAME). Throws MalformedInput otherwise.
BinaryOp by_name(const std::string& name);
/// Labels accepted by by_name, scale() excluded.
std::vector<std::string> names();
}  // namespace ops

/// A dissimilarity delta(x, y) on [0, inf)^2.
class Dissimilarity {
 public:
  using Fn = std::function<double(double, double)>;
  Dissimilarity(std::string label, Fn fn) : label_(std::move(label)), fn_(std::move(fn)) {}
  double operator()(double x, double y) const { return fn_(x, y); }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  Fn fn_;
};

namespace dissim {
Dissimilarity abs_diff();
Dissimilarity squared_diff();
Dissimilarity sqrt_abs_diff();
/// abs, sq or sqrt.
Dissimilarity by_name(const std::string& name);
}  // namespace dissim

struct GridViolation {
  double x = 0, y = 0, z = 0;
  std::string what;
};

/// Symmetry, zero exactly on the diagonal, and interval monotonicity on a k/8 grid of [0, 2].
std::optional<GridViolation> check_dissimilarity_axioms(const Dissimilarity& d);

/// True when op is nondecreasing in both arguments on the probe grid of its domain.
std::optional<GridViolation> check_nondecreasing(const BinaryOp& op);

/// A pair (F1, F2) with F1 >= F2 on the declared domain.
class FPair {
 public:
  /// Validates F1 >= F2 on a 101 x 101 grid of F1's declared domain.
  static FPair make(BinaryOp f1, BinaryOp f2);

  const BinaryOp& f1() const { return f1_; }
  const BinaryOp& f2() const { return f2_; }
  std::string label() const { return "(" + f1_.label() + "," + f2_.label() + ")"; }

 private:
  FPair(BinaryOp f1, BinaryOp f2) : f1_(std::move(f1)), f2_(std::move(f2)) {}
  BinaryOp f1_;
  BinaryOp f2_;
};

/// The 4-ary function L(x, y, z, w) of the Choquet-Sugeno-like operator: x = A(f|C),
/// y = A^(f|D), z = mu(C), w = muhat(D).
class LFunction {
 public:
  using Fn = std::function<double(double, double, double, double)>;
  LFunction(std::string label, Fn fn) : label_(std::move(label)), fn_(std::move(fn)) {}
  double operator()(double x, double y, double z, double w) const { return fn_(x, y, z, w); }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  Fn fn_;
};

/// The catalog of L functions.
namespace lcat {
/// |x - y|^p, p >= 1.
LFunction l1(double p);
/// x o z.
LFunction l2(const BinaryOp& op);
/// y o w.
LFunction l3(const BinaryOp& op);
/// x o (z - w)_+.
LFunction l4(const BinaryOp& op);
/// (x - y)_+ o z.
LFunction l5(const BinaryOp& op);
/// delta(x, y) o z.
LFunction l6(const Dissimilarity& delta, const BinaryOp& op);
/// F1(x, z) - F2(y, z).
LFunction l7(const FPair& pair);
}  // namespace lcat

}  // namespace csl
