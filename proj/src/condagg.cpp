#include "csl/condagg.hpp"

#include <algorithm>
#include <cmath>

namespace csl {

Fca::Fca(GroundSet ground, std::string label, Evaluator eval)
    : ground_(ground), label_(std::move(label)), eval_(std::move(eval)) {}

double Fca::operator()(const PointFunction& f, Subset d) const {
  require_same_ground(ground_, f.ground(), "conditional aggregation");
  if (d.empty()) return 0.0;
  return eval_(f, d);
}

double eval_condagg(const Fca& a, const PointFunction& f, Subset d) { return a(f, d); }

Fca make_fca(FcaKind kind, GroundSet ground, double p) {
  switch (kind) {
    case FcaKind::inf:
      return Fca(ground, "inf", [](const PointFunction& f, Subset d) { return f.min_over(d); });
    case FcaKind::sup:
      return Fca(ground, "sup", [](const PointFunction& f, Subset d) { return f.max_over(d); });
    case FcaKind::prod:
      return Fca(ground, "prod", [](const PointFunction& f, Subset d) {
        double r = 1.0;
        for (int i : d.points()) r *= f(i);
        return r;
      });
    case FcaKind::sum:
      return Fca(ground, "sum", [](const PointFunction& f, Subset d) {
        double r = 0.0;
        for (int i : d.points()) r += f(i);
        return r;
      });
    case FcaKind::mean:
      return Fca(ground, "mean", [](const PointFunction& f, Subset d) {
        double r = 0.0;
        for (int i : d.points()) r += f(i);
        return r / static_cast<double>(d.size());
      });
    case FcaKind::pnorm: {
      if (!(p >= 1.0) || !std::isfinite(p)) throw PreconditionError("pnorm requires p >= 1");
      return Fca(ground, "pnorm(" + std::to_string(p) + ")", [p](const PointFunction& f, Subset d) {
        double r = 0.0;
        for (int i : d.points()) r += std::pow(f(i), p);
        return std::pow(r, 1.0 / p);
      });
    }
    case FcaKind::lukasiewicz:
      return Fca(ground, "lukasiewicz", [](const PointFunction& f, Subset d) {
        double r = 0.0;
        for (int i : d.points()) r += f(i);
        return std::min(1.0, r);
      });
  }
  throw MalformedInput("unknown conditional aggregation kind");
}

Fca scale_fca(double alpha, const Fca& inner) {
  if (!(alpha >= 0.0)) throw PreconditionError("scale factor must be nonnegative");
  return Fca(inner.ground(), "scale(" + std::to_string(alpha) + "," + inner.label() + ")",
             [alpha, inner](const PointFunction& f, Subset d) { return alpha * inner(f, d); });
}

Fca power_fca(double q, const Fca& inner) {
  if (!(q > 0.0)) throw PreconditionError("power exponent must be positive");
  return Fca(inner.ground(), "power(" + std::to_string(q) + "," + inner.label() + ")",
             [q, inner](const PointFunction& f, Subset d) { return std::pow(inner(f, d), q); });
}

Fca cap_fca(double cap, const Fca& inner) {
  if (!(cap >= 0.0)) throw PreconditionError("cap must be nonnegative");
  return Fca(inner.ground(), "cap(" + std::to_string(cap) + "," + inner.label() + ")",
             [cap, inner](const PointFunction& f, Subset d) { return std::min(cap, inner(f, d)); });
}

const char* to_string(FcaProperty p) {
  switch (p) {
    case FcaProperty::conjunctive: return "conjunctive";
    case FcaProperty::homogeneous: return "homogeneous";
    case FcaProperty::subadditive: return "subadditive";
    case FcaProperty::convex: return "convex";
    case FcaProperty::idempotent: return "idempotent";
    case FcaProperty::interaction_i1: return "interaction_I1";
    case FcaProperty::interaction_i3: return "interaction_I3";
  }
  return "?";
}

namespace {

std::vector<double> to_vec(const PointFunction& f) { return {f.values().begin(), f.values().end()}; }

ProbeWitness witness(Subset d, const PointFunction& f, double lhs, double rhs, std::string note) {
  ProbeWitness w;
  w.d = d;
  w.f = to_vec(f);
  w.lhs = lhs;
  w.rhs = rhs;
  w.note = std::move(note);
  return w;
}

}  // namespace

AxiomReport check_condagg_axioms(const Fca& a, int trials, std::uint64_t seed, FunctionDomain domain) {
  if (trials < 1) throw PreconditionError("trials must be >= 1");
  const GroundSet g = a.ground();
  AxiomReport report;
  report.trials = trials;

  // (C2) exactly: the indicator of the complement aggregates to 0 on every conditional set.
  for (std::size_t b = 1; b < g.subset_count(); ++b) {
    const Subset d(static_cast<std::uint32_t>(b));
    const auto ind = PointFunction::indicator(g, g.complement(d));
    const double v = a(ind, d);
    if (!approx_eq(v, 0.0)) {
      report.c2_ok = false;
      if (!report.witness) report.witness = witness(d, ind, v, 0.0, "A(1_{D^c}|D) != 0");
      break;
    }
  }

  // (C1) by random probes: g >= f on D, arbitrary outside D.
  Rng rng(seed);
  for (int t = 0; t < trials && report.c1_ok; ++t) {
    const auto f = random_point_function(g, rng, domain);
    for (std::size_t b = 1; b < g.subset_count(); ++b) {
      const Subset d(static_cast<std::uint32_t>(b));
      std::vector<double> gv(static_cast<std::size_t>(g.n()));
      for (int i = 1; i <= g.n(); ++i) {
        const double fi = f(i);
        if (d.contains(i)) {
          gv[static_cast<std::size_t>(i - 1)] =
              domain == FunctionDomain::unit ? fi + rng.uniform() * (1.0 - fi) : fi + (rng.chance(0.3) ? 0.0 : rng.uniform());
        } else {
          gv[static_cast<std::size_t>(i - 1)] = domain == FunctionDomain::unit ? rng.uniform() : rng.uniform(0.0, 2.0);
        }
      }
      const PointFunction gf(g, std::move(gv));
      const double lhs = a(f, d);
      const double rhs = a(gf, d);
      if (!approx_le(lhs, rhs)) {
        report.c1_ok = false;
        auto w = witness(d, f, lhs, rhs, "f <= g on D but A(f|D) > A(g|D)");
        w.g = to_vec(gf);
        report.witness = w;
        break;
      }
    }
  }
  return report;
}

PropertyReport check_fca_property(const Fca& a, FcaProperty property, int trials, std::uint64_t seed,
                                  FunctionDomain domain) {
  if (trials < 1) throw PreconditionError("trials must be >= 1");
  const GroundSet g = a.ground();
  const bool unit = domain == FunctionDomain::unit;
  PropertyReport report;
  report.property = property;
  report.trials = trials;
  Rng rng(seed);

  auto fail = [&](ProbeWitness w) {
    report.holds = false;
    report.witness = std::move(w);
  };

  for (int t = 0; t < trials && report.holds; ++t) {
    const auto f = random_point_function(g, rng, domain);
    switch (property) {
      case FcaProperty::conjunctive:
        for (std::size_t b = 1; b < g.subset_count() && report.holds; ++b) {
          const Subset d(static_cast<std::uint32_t>(b));
          const double lhs = a(f, d);
          const double rhs = f.min_over(d);
          if (!approx_le(lhs, rhs)) fail(witness(d, f, lhs, rhs, "A(f|D) > min_D f"));
        }
        break;
      case FcaProperty::homogeneous: {
        const double alpha = unit ? rng.uniform() : rng.uniform(0.0, 3.0);
        const auto af = f.scaled(alpha);
        for (std::size_t b = 1; b < g.subset_count() && report.holds; ++b) {
          const Subset d(static_cast<std::uint32_t>(b));
          const double lhs = a(af, d);
          const double rhs = alpha * a(f, d);
          if (!approx_eq(lhs, rhs)) {
            auto w = witness(d, f, lhs, rhs, "A(alpha f|D) != alpha A(f|D)");
            w.scalar = alpha;
            fail(w);
          }
        }
        break;
      }
      case FcaProperty::subadditive:
      case FcaProperty::convex: {
        auto f1 = f;
        auto g1 = random_point_function(g, rng, domain);
        if (unit && property == FcaProperty::subadditive) {
          f1 = f1.scaled(0.5);
          g1 = g1.scaled(0.5);
        }
        const double lambda = rng.uniform();
        const auto combined = property == FcaProperty::subadditive ? f1.plus(g1) : f1.mix(lambda, g1);
        for (std::size_t b = 1; b < g.subset_count() && report.holds; ++b) {
          const Subset d(static_cast<std::uint32_t>(b));
          const double lhs = a(combined, d);
          const double rhs = property == FcaProperty::subadditive ? a(f1, d) + a(g1, d)
                                                                  : lambda * a(f1, d) + (1.0 - lambda) * a(g1, d);
          if (!approx_le(lhs, rhs)) {
            auto w = witness(d, f1, lhs, rhs,
                             property == FcaProperty::subadditive ? "A(f+g|D) > A(f|D)+A(g|D)" : "convexity violated");
            w.g = to_vec(g1);
            w.scalar = lambda;
            fail(w);
          }
        }
        break;
      }
      case FcaProperty::idempotent: {
        const double bval = unit ? rng.uniform() : rng.uniform(0.0, 3.0);
        const auto c = PointFunction::constant(g, bval);
        for (std::size_t b = 1; b < g.subset_count() && report.holds; ++b) {
          const Subset d(static_cast<std::uint32_t>(b));
          const double lhs = a(c, d);
          if (!approx_eq(lhs, bval)) {
            auto w = witness(d, c, lhs, bval, "A(b 1_X|D) != b");
            w.scalar = bval;
            fail(w);
          }
        }
        break;
      }
      case FcaProperty::interaction_i1:
        for (int i = 1; i <= g.n() && report.holds; ++i) {
          const Subset d = Subset::singleton(i);
          const double lhs = a(f, d);
          if (!approx_eq(lhs, f(i))) fail(witness(d, f, lhs, f(i), "A(f|{i}) != f(i)"));
        }
        break;
      case FcaProperty::interaction_i3:
        for (std::size_t e = 1; e < g.subset_count() && report.holds; ++e) {
          const auto eb = static_cast<std::uint32_t>(e);
          // every nonempty D subset of E
          for (std::uint32_t d = eb; d != 0 && report.holds; d = (d - 1) & eb) {
            const double small = a(f, Subset(d));
            const double big = a(f, Subset(eb));
            if (!approx_le(big, small)) {
              auto w = witness(Subset(d), f, small, big, "D subset of E but A(f|D) < A(f|E)");
              w.e = Subset(eb);
              fail(w);
            }
          }
        }
        break;
    }
  }
  return report;
}

}  // namespace csl
