#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csl/error.hpp"
#include "csl/random.hpp"

namespace csl {

/// Global comparison tolerance for every equality check in the library.
inline constexpr double kEps = 1e-9;

/// Largest ground set for which set functions can be stored.
inline constexpr int kMaxPoints = 12;

/// Tolerance-aware comparisons; the tolerance scales with the magnitude of the operands.
inline double tol_scale(double a, double b) {
  const double m = a < 0 ? -a : a;
  const double k = b < 0 ? -b : b;
  return 1.0 + (m > k ? m : k);
}
inline bool approx_eq(double a, double b, double eps = kEps) {
  const double d = a - b;
  return (d < 0 ? -d : d) <= eps * tol_scale(a, b);
}
inline bool approx_le(double a, double b, double eps = kEps) { return a <= b + eps * tol_scale(a, b); }

/// A subset of the ground set [n]; point i (1-based) is bit i-1.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  /// Builds a subset from 1-based point labels.
  static Subset of(std::initializer_list<int> points);
  static Subset of(std::span<const int> points);
  static constexpr Subset singleton(int point) { return Subset(1u << (point - 1)); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  constexpr bool contains(int point) const { return (bits_ >> (point - 1)) & 1u; }
  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool proper_subset_of(Subset other) const { return subset_of(other) && bits_ != other.bits_; }

  constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  constexpr Subset without(Subset o) const { return Subset(bits_ & ~o.bits_); }

  /// Sorted 1-based point labels.
  std::vector<int> points() const;
  /// Canonical text form, e.g. "{1,3}" and "{}".
  std::string to_string() const;

  friend constexpr auto operator<=>(Subset, Subset) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// The finite ground set [n] = {1, ..., n}.
class GroundSet {
 public:
  explicit GroundSet(int n);

  int n() const { return n_; }
  std::size_t subset_count() const { return std::size_t{1} << n_; }
  Subset full() const { return Subset((1u << n_) - 1u); }
  Subset complement(Subset s) const { return Subset(full().bits() & ~s.bits()); }
  bool contains(Subset s) const { return s.subset_of(full()); }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int n_;
};

void require_same_ground(const GroundSet& a, const GroundSet& b, const char* context);

/// A real-valued set function with value 0 at the empty set.
class SetFunction {
 public:
  /// `values[s.bits()]` is the value at subset s; there must be exactly 2^n entries.
  SetFunction(GroundSet ground, std::vector<double> values);

  static SetFunction zero(GroundSet ground);
  static SetFunction from(GroundSet ground, const std::function<double(Subset)>& value);

  const GroundSet& ground() const { return ground_; }
  double operator()(Subset s) const { return values_[s.bits()]; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const SetFunction&, const SetFunction&) = default;

 private:
  GroundSet ground_;
  std::vector<double> values_;
};

/// A grounded, nondecreasing, finite set function.
class MonotoneMeasure {
 public:
  /// Throws PreconditionError naming the first violated pair when `values` is not monotone.
  explicit MonotoneMeasure(SetFunction values);

  /// Symmetric measure D -> g[|D|]; g has n+1 entries with g[0] = 0 and is nondecreasing.
  static MonotoneMeasure symmetric(GroundSet ground, std::span<const double> by_cardinality);
  /// Additive measure with the given point weights.
  static MonotoneMeasure additive(GroundSet ground, std::span<const double> weights);
  /// The measure that is 1 on every nonempty subset.
  static MonotoneMeasure unanimity_all(GroundSet ground);

  const GroundSet& ground() const { return values_.ground(); }
  double operator()(Subset s) const { return values_(s); }
  double total() const { return values_(ground().full()); }
  const SetFunction& set_function() const { return values_; }

  friend bool operator==(const MonotoneMeasure&, const MonotoneMeasure&) = default;

 private:
  SetFunction values_;
};

/// Nonnegative finite function on the points of the ground set.
class PointFunction {
 public:
  /// `values[i]` is f(i+1).
  PointFunction(GroundSet ground, std::vector<double> values);

  static PointFunction constant(GroundSet ground, double b);
  static PointFunction indicator(GroundSet ground, Subset s, double height = 1.0);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n(); }
  /// f at a 1-based point.
  double operator()(int point) const { return values_[static_cast<std::size_t>(point - 1)]; }
  std::span<const double> values() const { return values_; }

  bool in_unit_interval() const;
  /// Minimum and maximum over a subset; both are 0 on the empty set.
  double min_over(Subset s) const;
  double max_over(Subset s) const;
  /// The t-level set {f >= t}.
  Subset level_set(double t) const;

  PointFunction restricted(Subset s) const;
  PointFunction scaled(double alpha) const;
  PointFunction plus(const PointFunction& other) const;
  /// lambda * this + (1 - lambda) * other.
  PointFunction mix(double lambda, const PointFunction& other) const;

  friend bool operator==(const PointFunction&, const PointFunction&) = default;

 private:
  GroundSet ground_;
  std::vector<double> values_;
};

/// 1-based points sorted by ascending value, ties broken by point label.
std::vector<int> ascending_order(const PointFunction& f);

enum class MeasureClass { signed_fn, monotone, capacity, symmetric };

struct ValidationReport {
  bool ok = true;
  /// First violating pair (C, D) in canonical order, when the failure is a pair condition.
  std::optional<std::pair<Subset, Subset>> witness;
  std::string reason;
};

ValidationReport validate_measure(const SetFunction& m, MeasureClass cls);

/// Mob(D) = sum over C subset of D of (-1)^{|D \ C|} m(C).
SetFunction mobius_transform(const SetFunction& m);
inline SetFunction mobius_transform(const MonotoneMeasure& m) { return mobius_transform(m.set_function()); }

/// zeta(s)(D) = sum over C subset of D of s(C); inverse of the Mobius transform.
SetFunction zeta_transform(const SetFunction& s);

/// D -> ref(X) - ref(D^c). Requires m(X) = ref(X).
MonotoneMeasure dual_measure(const MonotoneMeasure& m, const MonotoneMeasure& ref);
inline MonotoneMeasure dual_measure(const MonotoneMeasure& m) { return dual_measure(m, m); }

/// True when a(D) >= b(D) - eps for every D.
bool dominates(const SetFunction& a, const SetFunction& b);

enum class SamplerClass { monotone, capacity, symmetric, symmetric_capacity };

/// Random measure of the requested class; deterministic per seed. About one increment in
/// seven is zero so that ties between nested sets occur.
MonotoneMeasure random_measure(GroundSet ground, SamplerClass cls, std::uint64_t seed);
MonotoneMeasure random_measure(GroundSet ground, SamplerClass cls, Rng& rng);

enum class FunctionDomain { bounded, unit };

/// Random point function; half the draws land on a k/8 grid so that ties are common.
PointFunction random_point_function(GroundSet ground, Rng& rng, FunctionDomain domain);

}  // namespace csl
