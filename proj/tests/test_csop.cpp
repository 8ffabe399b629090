#include <doctest.h>

#include "csl/csop.hpp"
#include "csl/error.hpp"
#include "csl/integrals.hpp"

using namespace csl;

namespace {

MonotoneMeasure two_point_measure() { return MonotoneMeasure(SetFunction(GroundSet(2), {0.0, 0.5, 0.4, 1.0})); }

CSConfig make_config(GroundSet g, SystemTag tag, RelationKind rel, LFunction L, FcaKind a = FcaKind::inf) {
  return CSConfig{DecompositionSystem::symbolic(g, tag), RelationSpec{rel, {}}, std::move(L), make_fca(a, g),
                  make_fca(a, g)};
}

}  // namespace

TEST_CASE("chain system with R+ and L4(min) on the two-point example") {
  const GroundSet g(2);
  const PointFunction f(g, {0.5, 1.0});
  const auto cfg = make_config(g, SystemTag::chain, RelationKind::rplus, lcat::l4(ops::min()));
  const auto rep = cs_operator_report(cfg, f, two_point_measure(), two_point_measure().set_function());
  CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.argmax == std::vector<Subset>{g.full(), Subset::of({1})});
  CHECK(rep.collections == 5);
  double sum = 0;
  for (const auto& t : rep.terms) sum += t.value;
  CHECK(sum == doctest::Approx(rep.value));
}

TEST_CASE("partitions with L2(prod) give the pan integral") {
  const GroundSet g(3);
  const PointFunction f(g, {0.4, 0.2, 0.3});
  const auto mu = MonotoneMeasure::unanimity_all(g);
  const auto cfg = make_config(g, SystemTag::part, RelationKind::diagonal, lcat::l2(ops::product()));
  CHECK(cs_operator(cfg, f, mu) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(generalized_lebesgue(ops::product(), make_fca(FcaKind::inf, g), f, mu) == doctest::Approx(0.9));
  // A single collection of one block is the Shilkret-type value.
  const auto one = DecompositionSystem::explicit_list(g, {Collection(g, {g.full()})});
  CHECK(generalized_lebesgue(ops::product(), make_fca(FcaKind::inf, g), f, mu, one) == doctest::Approx(0.2));
}

TEST_CASE("chain system with R- and L5(prod) dominates the Choquet integral when A = inf") {
  // Over chains with (D_i, D_{i-1}) and L = (x - y)_+ * z the supremum is reached on the level chain.
  const GroundSet g(3);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    const auto mu = random_measure(g, SamplerClass::monotone, rng);
    const auto f = random_point_function(g, rng, FunctionDomain::bounded);
    const auto cfg = make_config(g, SystemTag::chain, RelationKind::rminus, lcat::l5(ops::product()));
    CHECK(cs_operator(cfg, f, mu) >= choquet(f, mu) - 1e-9);
  }
}

TEST_CASE("the Lovasz extension with inf and prod is the Mobius form of the Choquet integral") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet g(n);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      Rng rng(seed * 7 + n);
      const auto mu = random_measure(g, SamplerClass::monotone, rng);
      const auto f = random_point_function(g, rng, FunctionDomain::bounded);
      CHECK(lovasz_generalized(ops::product(), make_fca(FcaKind::inf, g), f, mu) ==
            doctest::Approx(choquet(f, mu, 4)).epsilon(1e-12));
      CHECK(minmax_diff(ops::product(), f, mu) == doctest::Approx(choquet(f, mu)).epsilon(1e-9));
    }
  }
}

TEST_CASE("min-max differences on the two-point example") {
  const GroundSet g(2);
  CHECK(minmax_diff(ops::product(), PointFunction(g, {0.5, 1.0}), two_point_measure()) == doctest::Approx(0.7));
}

TEST_CASE("p-variation") {
  const GroundSet g(3);
  const PointFunction f(g, {0.1, 0.7, 0.4});
  const auto chains = DecompositionSystem::symbolic(g, SystemTag::chain);
  const RelationSpec cons{RelationKind::consecutive, {}};
  // A = inf: the sum telescopes to max f - min f.
  CHECK(p_variation(1.0, make_fca(FcaKind::inf, g), f, chains, cons) == doctest::Approx(0.6));
  CHECK(p_variation(2.0, make_fca(FcaKind::inf, g), f, chains, cons) == doctest::Approx(0.36));
  CHECK_THROWS_AS(p_variation(0.5, make_fca(FcaKind::inf, g), f, chains, cons), PreconditionError);
}

TEST_CASE("upper Sugeno-like operator modes") {
  const GroundSet g(2);
  const PointFunction f(g, {0.5, 1.0});
  const auto mu = two_point_measure();
  const Fca inf = make_fca(FcaKind::inf, g), sup = make_fca(FcaKind::sup, g);
  CHECK(upper_sugeno_like(ops::min(), inf, f, mu) == 0.5);
  CHECK(upper_sugeno_like(ops::min(), sup, f, mu) == 1.0);
  CHECK(upper_sugeno_like(ops::min(), sup, f, mu, SugenoMode::inf) == 0.5);
  CHECK(upper_sugeno_like(ops::min(), inf, f, mu, SugenoMode::levelset) == 0.5);
  CHECK(upper_sugeno_like(ops::product(), inf, f, mu) == doctest::Approx(0.5));
  CHECK_THROWS_AS(upper_sugeno_like(ops::a_times_abs_1_minus_b(), inf, f, mu, SugenoMode::levelset), PreconditionError);
  CHECK(sugeno_levelset_value(ops::min(), f, mu) == 0.5);
}

TEST_CASE("the level-set Sugeno form matches the supremum for nondecreasing F") {
  for (int n = 1; n <= 4; ++n) {
    const GroundSet g(n);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      Rng rng(seed + 100 * n);
      const auto mu = random_measure(g, SamplerClass::monotone, rng);
      const auto f = random_point_function(g, rng, FunctionDomain::bounded);
      for (const auto& op : {ops::min(), ops::product(), ops::a_times_min_x_1()}) {
        CHECK(upper_sugeno_like(op, make_fca(FcaKind::inf, g), f, mu) ==
              doctest::Approx(sugeno_levelset_value(op, f, mu)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("explicit systems") {
  const GroundSet g(2);
  CHECK_THROWS_AS(DecompositionSystem::explicit_list(g, {}), PreconditionError);
  const auto sys = DecompositionSystem::explicit_list(g, {Collection(g, {Subset::of({1}), Subset::of({2})})});
  const CSConfig cfg{sys, RelationSpec{}, lcat::l2(ops::product()), make_fca(FcaKind::inf, g), make_fca(FcaKind::inf, g)};
  CHECK(cs_operator(cfg, PointFunction(g, {0.5, 1.0}), two_point_measure()) == doctest::Approx(0.65));
}

TEST_CASE("muhat enters through the second coordinate") {
  const GroundSet g(2);
  const PointFunction f(g, {0.5, 1.0});
  const auto cfg = make_config(g, SystemTag::one, RelationKind::diagonal, lcat::l3(ops::product()));
  const SetFunction muhat(g, {0.0, 0.1, 0.2, 0.3});
  CHECK(cs_operator(cfg, f, two_point_measure(), muhat) == doctest::Approx(0.5 * 0.1 + 1.0 * 0.2 + 0.5 * 0.3));
}
