#include "csl/setfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace csl {

Subset Subset::of(std::initializer_list<int> points) {
  return of(std::span<const int>(points.begin(), points.size()));
}

Subset Subset::of(std::span<const int> points) {
  std::uint32_t bits = 0;
  for (int p : points) {
    if (p < 1 || p > kMaxPoints) throw MalformedInput("point label out of range: " + std::to_string(p));
    bits |= 1u << (p - 1);
  }
  return Subset(bits);
}

std::vector<int> Subset::points() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if ((bits_ >> i) & 1u) out.push_back(i + 1);
  }
  return out;
}

std::string Subset::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int p : points()) {
    if (!first) s += ',';
    s += std::to_string(p);
    first = false;
  }
  return s + "}";
}

GroundSet::GroundSet(int n) : n_(n) {
  if (n < 1) throw MalformedInput("ground set needs at least one point");
  if (n > kMaxPoints) throw CapacityError("ground set size " + std::to_string(n) + " exceeds " + std::to_string(kMaxPoints));
}

void require_same_ground(const GroundSet& a, const GroundSet& b, const char* context) {
  if (a != b) {
    throw GroundMismatch(std::string(context) + ": ground sets [" + std::to_string(a.n()) + "] and [" +
                         std::to_string(b.n()) + "] differ");
  }
}

SetFunction::SetFunction(GroundSet ground, std::vector<double> values)
    : ground_(ground), values_(std::move(values)) {
  if (values_.size() != ground_.subset_count()) {
    throw MalformedInput("set function on [" + std::to_string(ground_.n()) + "] needs " +
                         std::to_string(ground_.subset_count()) + " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t b = 0; b < values_.size(); ++b) {
    if (!std::isfinite(values_[b])) {
      throw MalformedInput("non-finite value at " + Subset(static_cast<std::uint32_t>(b)).to_string());
    }
  }
  if (std::abs(values_[0]) > kEps) throw MalformedInput("set function must vanish at the empty set");
  values_[0] = 0.0;
}

SetFunction SetFunction::zero(GroundSet ground) {
  return SetFunction(ground, std::vector<double>(ground.subset_count(), 0.0));
}

SetFunction SetFunction::from(GroundSet ground, const std::function<double(Subset)>& value) {
  std::vector<double> v(ground.subset_count());
  for (std::size_t b = 1; b < v.size(); ++b) v[b] = value(Subset(static_cast<std::uint32_t>(b)));
  return SetFunction(ground, std::move(v));
}

namespace {

std::optional<std::pair<Subset, Subset>> first_monotonicity_violation(const SetFunction& m) {
  const auto vals = m.values();
  for (std::size_t b = 1; b < vals.size(); ++b) {
    const auto d = static_cast<std::uint32_t>(b);
    for (std::uint32_t rest = d; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      const std::uint32_t c = d & ~bit;
      if (!approx_le(vals[c], vals[d])) return std::pair{Subset(c), Subset(d)};
    }
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_measure(const SetFunction& m, MeasureClass cls) {
  ValidationReport r;
  switch (cls) {
    case MeasureClass::signed_fn:
      return r;
    case MeasureClass::monotone:
    case MeasureClass::capacity: {
      if (auto w = first_monotonicity_violation(m)) {
        r.ok = false;
        r.witness = w;
        r.reason = "not monotone: value at " + w->first.to_string() + " exceeds value at " + w->second.to_string();
        return r;
      }
      if (cls == MeasureClass::capacity && !approx_eq(m(m.ground().full()), 1.0)) {
        r.ok = false;
        r.reason = "capacity must have value 1 at the ground set";
      }
      return r;
    }
    case MeasureClass::symmetric: {
      const int n = m.ground().n();
      std::vector<std::optional<Subset>> first_of_size(static_cast<std::size_t>(n + 1));
      for (std::size_t b = 1; b < m.ground().subset_count(); ++b) {
        const Subset d(static_cast<std::uint32_t>(b));
        auto& rep = first_of_size[static_cast<std::size_t>(d.size())];
        if (!rep) {
          rep = d;
        } else if (!approx_eq(m(*rep), m(d))) {
          r.ok = false;
          r.witness = std::pair{*rep, d};
          r.reason = "not symmetric: " + rep->to_string() + " and " + d.to_string() + " have equal size";
          return r;
        }
      }
      return r;
    }
  }
  return r;
}

MonotoneMeasure::MonotoneMeasure(SetFunction values) : values_(std::move(values)) {
  const auto report = validate_measure(values_, MeasureClass::monotone);
  if (!report.ok) throw PreconditionError(report.reason);
}

MonotoneMeasure MonotoneMeasure::symmetric(GroundSet ground, std::span<const double> by_cardinality) {
  if (by_cardinality.size() != static_cast<std::size_t>(ground.n() + 1)) {
    throw MalformedInput("symmetric measure needs n+1 cardinality values");
  }
  return MonotoneMeasure(SetFunction::from(
      ground, [&](Subset s) { return by_cardinality[static_cast<std::size_t>(s.size())]; }));
}

MonotoneMeasure MonotoneMeasure::additive(GroundSet ground, std::span<const double> weights) {
  if (weights.size() != static_cast<std::size_t>(ground.n())) throw MalformedInput("additive measure needs n weights");
  return MonotoneMeasure(SetFunction::from(ground, [&](Subset s) {
    double sum = 0.0;
    for (int p : s.points()) sum += weights[static_cast<std::size_t>(p - 1)];
    return sum;
  }));
}

MonotoneMeasure MonotoneMeasure::unanimity_all(GroundSet ground) {
  return MonotoneMeasure(SetFunction::from(ground, [](Subset) { return 1.0; }));
}

PointFunction::PointFunction(GroundSet ground, std::vector<double> values)
    : ground_(ground), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(ground_.n())) {
    throw MalformedInput("point function on [" + std::to_string(ground_.n()) + "] needs " +
                         std::to_string(ground_.n()) + " values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw MalformedInput("point function values must be finite and nonnegative");
  }
}

PointFunction PointFunction::constant(GroundSet ground, double b) {
  return PointFunction(ground, std::vector<double>(static_cast<std::size_t>(ground.n()), b));
}

PointFunction PointFunction::indicator(GroundSet ground, Subset s, double height) {
  std::vector<double> v(static_cast<std::size_t>(ground.n()), 0.0);
  for (int p : s.points()) v[static_cast<std::size_t>(p - 1)] = height;
  return PointFunction(ground, std::move(v));
}

bool PointFunction::in_unit_interval() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v <= 1.0; });
}

double PointFunction::min_over(Subset s) const {
  if (s.empty()) return 0.0;
  double m = INFINITY;
  for (int p : s.points()) m = std::min(m, (*this)(p));
  return m;
}

double PointFunction::max_over(Subset s) const {
  double m = 0.0;
  for (int p : s.points()) m = std::max(m, (*this)(p));
  return m;
}

Subset PointFunction::level_set(double t) const {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= t) bits |= 1u << i;
  }
  return Subset(bits);
}

PointFunction PointFunction::restricted(Subset s) const {
  auto v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!s.contains(static_cast<int>(i) + 1)) v[i] = 0.0;
  }
  return PointFunction(ground_, std::move(v));
}

PointFunction PointFunction::scaled(double alpha) const {
  auto v = values_;
  for (double& x : v) x *= alpha;
  return PointFunction(ground_, std::move(v));
}

PointFunction PointFunction::plus(const PointFunction& other) const {
  require_same_ground(ground_, other.ground_, "PointFunction::plus");
  auto v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return PointFunction(ground_, std::move(v));
}

PointFunction PointFunction::mix(double lambda, const PointFunction& other) const {
  require_same_ground(ground_, other.ground_, "PointFunction::mix");
  auto v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = lambda * v[i] + (1.0 - lambda) * other.values_[i];
  return PointFunction(ground_, std::move(v));
}

std::vector<int> ascending_order(const PointFunction& f) {
  std::vector<int> order(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.n(); ++i) order[static_cast<std::size_t>(i)] = i + 1;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f(a) < f(b); });
  return order;
}

SetFunction mobius_transform(const SetFunction& m) {
  std::vector<double> v(m.values().begin(), m.values().end());
  const std::size_t size = v.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t b = 0; b < size; ++b) {
      if (b & bit) v[b] -= v[b ^ bit];
    }
  }
  return SetFunction(m.ground(), std::move(v));
}

SetFunction zeta_transform(const SetFunction& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  const std::size_t size = v.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t b = 0; b < size; ++b) {
      if (b & bit) v[b] += v[b ^ bit];
    }
  }
  return SetFunction(s.ground(), std::move(v));
}

MonotoneMeasure dual_measure(const MonotoneMeasure& m, const MonotoneMeasure& ref) {
  require_same_ground(m.ground(), ref.ground(), "dual_measure");
  if (!approx_eq(m.total(), ref.total())) {
    throw PreconditionError("dual_measure requires equal values at the ground set");
  }
  const GroundSet g = ref.ground();
  const double top = ref.total();
  return MonotoneMeasure(SetFunction::from(g, [&](Subset d) { return top - ref(g.complement(d)); }));
}

bool dominates(const SetFunction& a, const SetFunction& b) {
  require_same_ground(a.ground(), b.ground(), "dominates");
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    if (!approx_le(b.values()[i], a.values()[i])) return false;
  }
  return true;
}

namespace {

double increment(Rng& rng) { return rng.chance(1.0 / 7.0) ? 0.0 : rng.uniform(); }

}  // namespace

MonotoneMeasure random_measure(GroundSet ground, SamplerClass cls, std::uint64_t seed) {
  Rng rng(seed);
  return random_measure(ground, cls, rng);
}

MonotoneMeasure random_measure(GroundSet ground, SamplerClass cls, Rng& rng) {
  const int n = ground.n();
  if (cls == SamplerClass::symmetric || cls == SamplerClass::symmetric_capacity) {
    std::vector<double> g(static_cast<std::size_t>(n + 1), 0.0);
    for (int k = 1; k <= n; ++k) g[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k - 1)] + increment(rng);
    if (g.back() == 0.0) g.back() = 1.0;
    if (cls == SamplerClass::symmetric_capacity) {
      const double top = g.back();
      for (double& x : g) x /= top;
      g.back() = 1.0;
    }
    return MonotoneMeasure::symmetric(ground, g);
  }
  std::vector<double> v(ground.subset_count(), 0.0);
  for (std::size_t b = 1; b < v.size(); ++b) {
    double lower = 0.0;
    for (std::size_t rest = b; rest != 0; rest &= rest - 1) lower = std::max(lower, v[b & ~(rest & (~rest + 1))]);
    v[b] = lower + increment(rng);
  }
  if (v.back() == 0.0) v.back() = 1.0;
  if (cls == SamplerClass::capacity) {
    const double top = v.back();
    for (double& x : v) x /= top;
    v.back() = 1.0;
  }
  return MonotoneMeasure(SetFunction(ground, std::move(v)));
}

PointFunction random_point_function(GroundSet ground, Rng& rng, FunctionDomain domain) {
  const double hi = domain == FunctionDomain::unit ? 1.0 : 2.0;
  const int grid_top = domain == FunctionDomain::unit ? 8 : 16;
  const bool on_grid = rng.chance(0.5);
  std::vector<double> v(static_cast<std::size_t>(ground.n()));
  for (double& x : v) {
    x = on_grid ? static_cast<double>(rng.below(static_cast<std::uint64_t>(grid_top + 1))) / 8.0 : rng.uniform(0.0, hi);
  }
  return PointFunction(ground, std::move(v));
}

}  // namespace csl
