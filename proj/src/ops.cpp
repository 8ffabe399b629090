#include "csl/ops.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "csl/error.hpp"
#include "csl/setfn.hpp"

namespace csl {

namespace ops {

BinaryOp min() {
  return BinaryOp("min", [](double a, double b) { return std::min(a, b); });
}
BinaryOp max() {
  return BinaryOp("max", [](double a, double b) { return std::max(a, b); });
}
BinaryOp product() {
  return BinaryOp("prod", [](double a, double b) { return a * b; });
}
BinaryOp sum() {
  return BinaryOp("sum", [](double a, double b) { return a + b; });
}
BinaryOp a_times_x_squared() {
  return BinaryOp("a*x^2", [](double a, double x) { return a * x * x; });
}
BinaryOp a_times_min_x_1() {
  return BinaryOp("a*min(x,1)", [](double a, double x) { return a * std::min(x, 1.0); });
}
BinaryOp g_times(std::string g_label, std::function<double(double)> g) {
  return BinaryOp("g*b[" + g_label + "]", [g = std::move(g)](double a, double b) { return g(a) * b; });
}
BinaryOp a_times_abs_1_minus_b() {
  return BinaryOp("a*|1-b|", [](double a, double b) { return a * std::abs(1.0 - b); });
}
BinaryOp copula_m() {
  return BinaryOp("copula:M", [](double a, double b) { return std::min(a, b); }, OpDomain::unit);
}
BinaryOp copula_pi() {
  return BinaryOp("copula:Pi", [](double a, double b) { return a * b; }, OpDomain::unit);
}
BinaryOp copula_w() {
  return BinaryOp("copula:W", [](double a, double b) { return std::max(a + b - 1.0, 0.0); }, OpDomain::unit);
}
BinaryOp scaled(double c, const BinaryOp& inner) {
  std::ostringstream label;
  label << "scale(" << std::setprecision(12) << c << "," << inner.label() << ")";
  return BinaryOp(label.str(),
                  [c, inner](double a, double b) { return c * inner(a, b); }, inner.domain());
}

BinaryOp by_name(const std::string& name) {
  if (name == "min") return min();
  if (name == "max") return max();
  if (name == "prod") return product();
  if (name == "sum") return sum();
  if (name == "a*x^2") return a_times_x_squared();
  if (name == "a*min(x,1)") return a_times_min_x_1();
  if (name == "a*|1-b|") return a_times_abs_1_minus_b();
  if (name == "copula:M") return copula_m();
  if (name == "copula:Pi") return copula_pi();
  if (name == "copula:W") return copula_w();
  if (name == "g*b[sq]") return g_times("sq", [](double a) { return a * a; });
  if (name == "g*b[zero]") return g_times("zero", [](double) { return 0.0; });
  if (name.starts_with("scale(") && name.ends_with(")")) {
    const auto comma = name.find(',');
    if (comma != std::string::npos) {
      double c = 0.0;
      try {
        c = std::stod(name.substr(6, comma - 6));
      } catch (const std::exception&) {
        throw MalformedInput("bad scale factor in operation '" + name + "'");
      }
      return scaled(c, by_name(name.substr(comma + 1, name.size() - comma - 2)));
    }
  }
  throw MalformedInput("unknown binary operation '" + name + "'");
}

std::vector<std::string> names() {
  return {"min", "max", "prod", "sum", "a*x^2", "a*min(x,1)", "a*|1-b|", "copula:M", "copula:Pi", "copula:W",
          "g*b[sq]", "g*b[zero]"};
}

}  // namespace ops

namespace dissim {

Dissimilarity abs_diff() {
  return Dissimilarity("abs", [](double x, double y) { return std::abs(x - y); });
}
Dissimilarity squared_diff() {
  return Dissimilarity("sq", [](double x, double y) { return (x - y) * (x - y); });
}
Dissimilarity sqrt_abs_diff() {
  return Dissimilarity("sqrt", [](double x, double y) { return std::sqrt(std::abs(x - y)); });
}

Dissimilarity by_name(const std::string& name) {
  if (name == "abs") return abs_diff();
  if (name == "sq") return squared_diff();
  if (name == "sqrt") return sqrt_abs_diff();
  throw MalformedInput("unknown dissimilarity '" + name + "'");
}

}  // namespace dissim

std::optional<GridViolation> check_dissimilarity_axioms(const Dissimilarity& d) {
  constexpr int kTop = 16;
  auto at = [](int k) { return static_cast<double>(k) / 8.0; };
  for (int i = 0; i <= kTop; ++i) {
    for (int j = 0; j <= kTop; ++j) {
      const double x = at(i), y = at(j);
      if (!approx_eq(d(x, y), d(y, x))) return GridViolation{x, y, 0, "not symmetric"};
      const bool zero = approx_eq(d(x, y), 0.0);
      if (zero != (i == j)) return GridViolation{x, y, 0, "zero set is not the diagonal"};
      for (int k = j; k <= kTop && i <= j; ++k) {
        const double z = at(k);
        if (!approx_le(d(x, y), d(x, z)) || !approx_le(d(y, z), d(x, z))) {
          return GridViolation{x, y, z, "not monotone under interval containment"};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

double probe_top(OpDomain d) { return d == OpDomain::unit ? 1.0 : kNonnegProbeTop; }

double grid_point(OpDomain d, int k) {
  return probe_top(d) * static_cast<double>(k) / static_cast<double>(kProbeGridSide - 1);
}

}  // namespace

std::optional<GridViolation> check_nondecreasing(const BinaryOp& op) {
  const auto dom = op.domain();
  for (int i = 0; i < kProbeGridSide; ++i) {
    for (int j = 0; j < kProbeGridSide; ++j) {
      const double a = grid_point(dom, i), b = grid_point(dom, j);
      const double v = op(a, b);
      if (i + 1 < kProbeGridSide && !approx_le(v, op(grid_point(dom, i + 1), b))) {
        return GridViolation{a, b, 0, "decreasing in the first argument"};
      }
      if (j + 1 < kProbeGridSide && !approx_le(v, op(a, grid_point(dom, j + 1)))) {
        return GridViolation{a, b, 0, "decreasing in the second argument"};
      }
    }
  }
  return std::nullopt;
}

FPair FPair::make(BinaryOp f1, BinaryOp f2) {
  const auto dom = f1.domain();
  for (int i = 0; i < kProbeGridSide; ++i) {
    for (int j = 0; j < kProbeGridSide; ++j) {
      const double a = grid_point(dom, i), b = grid_point(dom, j);
      if (!approx_le(f2(a, b), f1(a, b))) {
        throw PreconditionError("F1 >= F2 fails at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
      }
    }
  }
  return FPair(std::move(f1), std::move(f2));
}

namespace lcat {

LFunction l1(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw PreconditionError("L1 requires p >= 1");
  return LFunction("L1(" + std::to_string(p) + ")",
                   [p](double x, double y, double, double) { return std::pow(std::abs(x - y), p); });
}

LFunction l2(const BinaryOp& op) {
  return LFunction("L2(" + op.label() + ")", [op](double x, double, double z, double) { return op(x, z); });
}

LFunction l3(const BinaryOp& op) {
  return LFunction("L3(" + op.label() + ")", [op](double, double y, double, double w) { return op(y, w); });
}

LFunction l4(const BinaryOp& op) {
  return LFunction("L4(" + op.label() + ")",
                   [op](double x, double, double z, double w) { return op(x, std::max(z - w, 0.0)); });
}

LFunction l5(const BinaryOp& op) {
  return LFunction("L5(" + op.label() + ")",
                   [op](double x, double y, double z, double) { return op(std::max(x - y, 0.0), z); });
}

LFunction l6(const Dissimilarity& delta, const BinaryOp& op) {
  return LFunction("L6(" + delta.label() + "," + op.label() + ")",
                   [delta, op](double x, double y, double z, double) { return op(delta(x, y), z); });
}

LFunction l7(const FPair& pair) {
  return LFunction("L7" + pair.label(), [pair](double x, double y, double z, double) {
    return pair.f1()(x, z) - pair.f2()(y, z);
  });
}

}  // namespace lcat

}  // namespace csl
