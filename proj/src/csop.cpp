#include "csl/csop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csl/error.hpp"

namespace csl {

namespace {

void check_grounds(const CSConfig& cfg, const PointFunction& f, const MonotoneMeasure& mu, const SetFunction& muhat) {
  const GroundSet& g = f.ground();
  require_same_ground(g, mu.ground(), "cs_operator(mu)");
  require_same_ground(g, muhat.ground(), "cs_operator(muhat)");
  require_same_ground(g, cfg.system.ground(), "cs_operator(system)");
  require_same_ground(g, cfg.a.ground(), "cs_operator(A)");
  require_same_ground(g, cfg.ahat.ground(), "cs_operator(Ahat)");
}

}  // namespace

double cs_collection_sum(const CSConfig& cfg, const Collection& c, const PointFunction& f, const MonotoneMeasure& mu,
                         const SetFunction& muhat, std::vector<CSTerm>* terms) {
  const Relation rel = make_relation(c, cfg.relation);
  double sum = 0.0;
  for (const auto& [first, second] : rel.pairs) {
    CSTerm t{first, second, cfg.a(f, first), cfg.ahat(f, second), mu(first), muhat(second), 0.0};
    t.value = cfg.L(t.x, t.y, t.z, t.w);
    sum += t.value;
    if (terms) terms->push_back(t);
  }
  return sum;
}

double cs_operator(const CSConfig& cfg, const PointFunction& f, const MonotoneMeasure& mu, const SetFunction& muhat) {
  check_grounds(cfg, f, mu, muhat);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t seen = 0;
  cfg.system.for_each([&](const Collection& c) {
    best = std::max(best, cs_collection_sum(cfg, c, f, mu, muhat));
    ++seen;
  });
  if (seen == 0) throw PreconditionError("decomposition system is empty");
  return best;
}

CSReport cs_operator_report(const CSConfig& cfg, const PointFunction& f, const MonotoneMeasure& mu,
                            const SetFunction& muhat) {
  check_grounds(cfg, f, mu, muhat);
  std::vector<double> sums;
  cfg.system.for_each([&](const Collection& c) { sums.push_back(cs_collection_sum(cfg, c, f, mu, muhat)); });
  if (sums.empty()) throw PreconditionError("decomposition system is empty");

  CSReport report;
  report.collections = sums.size();
  report.value = *std::max_element(sums.begin(), sums.end());
  std::size_t pick = 0;
  while (!approx_eq(sums[pick], report.value)) ++pick;

  std::size_t index = 0;
  cfg.system.for_each([&](const Collection& c) {
    if (index++ != pick) return;
    report.argmax = c.members();
    cs_collection_sum(cfg, c, f, mu, muhat, &report.terms);
  });
  return report;
}

double upper_sugeno_like(const BinaryOp& F, const Fca& a, const PointFunction& f, const MonotoneMeasure& mu,
                         SugenoMode mode) {
  require_same_ground(f.ground(), mu.ground(), "upper_sugeno_like");
  if (mode == SugenoMode::levelset) {
    if (auto v = check_nondecreasing(F)) {
      throw PreconditionError("level-set form needs a nondecreasing F: " + v->what + " at (" + std::to_string(v->x) +
                              ", " + std::to_string(v->y) + ")");
    }
    return sugeno_levelset_value(F, f, mu);
  }
  require_same_ground(f.ground(), a.ground(), "upper_sugeno_like");
  const Fca agg = mode == SugenoMode::inf ? make_fca(FcaKind::inf, f.ground()) : a;
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t b = 1; b < f.ground().subset_count(); ++b) {
    const Subset d(b);
    best = std::max(best, F(agg(f, d), mu(d)));
  }
  return best;
}

double sugeno_levelset_value(const BinaryOp& F, const PointFunction& f, const MonotoneMeasure& mu) {
  require_same_ground(f.ground(), mu.ground(), "sugeno_levelset_value");
  double best = -std::numeric_limits<double>::infinity();
  Subset upper = f.ground().full();
  for (int p : ascending_order(f)) {
    best = std::max(best, F(f(p), mu(upper)));
    upper = upper.without(Subset::singleton(p));
  }
  return best;
}

double generalized_lebesgue(const BinaryOp& op, const Fca& a, const PointFunction& f, const MonotoneMeasure& mu,
                            const std::optional<DecompositionSystem>& system) {
  const DecompositionSystem sys = system ? *system : DecompositionSystem::symbolic(f.ground(), SystemTag::part);
  const CSConfig cfg{sys, RelationSpec{RelationKind::diagonal, {}}, lcat::l2(op), a, a};
  return cs_operator(cfg, f, mu);
}

double lovasz_generalized(const BinaryOp& op, const Fca& a, const PointFunction& f, const MonotoneMeasure& mu) {
  require_same_ground(f.ground(), mu.ground(), "lovasz_generalized");
  require_same_ground(f.ground(), a.ground(), "lovasz_generalized");
  const SetFunction mob = mobius_transform(mu);
  double sum = 0.0;
  for (std::uint32_t b = 1; b < f.ground().subset_count(); ++b) {
    const Subset d(b);
    sum += op(a(f, d), mob(d));
  }
  return sum;
}

double minmax_diff(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu) {
  require_same_ground(f.ground(), mu.ground(), "minmax_diff");
  const GroundSet& g = f.ground();
  double sum = 0.0;
  for (std::uint32_t b = 1; b < g.subset_count(); ++b) {
    const Subset d(b);
    const double gap = std::max(f.min_over(d) - f.max_over(g.complement(d)), 0.0);
    sum += op(gap, mu(d));
  }
  return sum;
}

double p_variation(double p, const Fca& a, const PointFunction& f, const DecompositionSystem& system,
                   const RelationSpec& relation) {
  const CSConfig cfg{system, relation, lcat::l1(p), a, a};
  return cs_operator(cfg, f, MonotoneMeasure(SetFunction::zero(f.ground())));
}

}  // namespace csl
