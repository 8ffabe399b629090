#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "csl/csop.hpp"
#include "csl/error.hpp"
#include "csl/integrals.hpp"

using namespace csl;

namespace {

MonotoneMeasure two_point_measure() { return MonotoneMeasure(SetFunction(GroundSet(2), {0.0, 0.5, 0.4, 1.0})); }
MonotoneMeasure symmetric_pair_measure() { return MonotoneMeasure(SetFunction(GroundSet(2), {0.0, 1.0, 1.0, 2.0})); }

// Textbook form: sort ascending, then sum (f_(i) - f_(i-1)) mu({(i), ..., (n)}).
double choquet_oracle(const PointFunction& f, const MonotoneMeasure& mu) {
  std::vector<int> idx(static_cast<std::size_t>(f.n()));
  std::iota(idx.begin(), idx.end(), 1);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f(a) < f(b); });
  double prev = 0, total = 0;
  Subset above = f.ground().full();
  for (int i : idx) {
    total += (f(i) - prev) * mu(above);
    prev = f(i);
    above = above.without(Subset::singleton(i));
  }
  return total;
}

MonotoneMeasure dominated(const MonotoneMeasure& mu, Rng& rng) {
  const GroundSet g = mu.ground();
  const auto rho = random_measure(g, SamplerClass::monotone, rng);
  const double s = rng.uniform(0.2, 1.0) * mu.total() / std::max(rho.total(), 1e-12);
  return MonotoneMeasure(SetFunction::from(g, [&](Subset d) {
    return d == g.full() ? mu.total() : std::min(mu(d), s * rho(d));
  }));
}

}  // namespace

TEST_CASE("the four Choquet forms agree with each other and with a sorting oracle") {
  for (int n = 1; n <= 6; ++n) {
    const GroundSet g(n);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      Rng rng(seed * 13 + n);
      const auto mu = random_measure(g, SamplerClass::monotone, rng);
      const auto f = random_point_function(g, rng, FunctionDomain::bounded);
      const double ref = choquet_oracle(f, mu);
      for (int form = 1; form <= 4; ++form) CHECK(std::abs(choquet(f, mu, form) - ref) <= 1e-9 * (1 + ref));
    }
  }
  CHECK_THROWS_AS(choquet(PointFunction(GroundSet(1), {1.0}), MonotoneMeasure::unanimity_all(GroundSet(1)), 5),
                  MalformedInput);
}

TEST_CASE("Choquet integral on the two-point example") {
  CHECK(choquet(PointFunction(GroundSet(2), {0.5, 1.0}), two_point_measure()) == doctest::Approx(0.7));
}

TEST_CASE("admissible orderings") {
  const GroundSet g(4);
  std::vector<std::vector<int>> seen;
  for_each_admissible_order(PointFunction(g, {0.5, 0.5, 0.1, 0.5}), PermutationPolicy::all,
                            [&](const std::vector<int>& o) { seen.push_back(o); });
  CHECK(seen.size() == 6);
  for (const auto& o : seen) CHECK(o[0] == 3);
  CHECK(seen.front() == std::vector<int>{3, 1, 2, 4});
  seen.clear();
  for_each_admissible_order(PointFunction(g, {0.5, 0.5, 0.1, 0.5}), PermutationPolicy::canonical,
                            [&](const std::vector<int>& o) { seen.push_back(o); });
  CHECK(seen.size() == 1);
}

TEST_CASE("forward chain operator on the two-point example") {
  const GroundSet g(2);
  const auto mu = two_point_measure();
  const auto rep = fc_operator(ops::min(), PointFunction(g, {0.5, 1.0}), mu, mu);
  CHECK(rep.value == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(rep.well_defined);
  CHECK(rep.order == std::vector<int>{1, 2});

  const auto tie = fc_operator(ops::min(), PointFunction(g, {0.5, 0.5}), mu, mu, PermutationPolicy::all);
  CHECK(tie.min == doctest::Approx(0.9));
  CHECK(tie.max == doctest::Approx(1.0));
  CHECK_FALSE(tie.well_defined);
  CHECK(tie.permutations == 2);

  // The product is of the form g(a) b, so ties do not matter.
  const auto prod = fc_operator(ops::product(), PointFunction(g, {0.5, 0.5}), mu, mu, PermutationPolicy::all);
  CHECK(prod.well_defined);
  CHECK(prod.value == doctest::Approx(0.5));
}

TEST_CASE("chain operators on a symmetric measure with a tie") {
  const GroundSet g(2);
  const PointFunction f(g, {0.5, 0.5});
  const auto mu = symmetric_pair_measure();
  CHECK(fc_operator(ops::min(), f, mu, mu).value == doctest::Approx(1.0));
  CHECK(fc_levelset(ops::min(), f, mu) == doctest::Approx(0.5));
  CHECK(fc_levelset(ops::product(), f, mu) == doctest::Approx(fc_operator(ops::product(), f, mu, mu).value));

  const auto pair = FPair::make(ops::product(), ops::by_name("scale(0.5,prod)"));
  CHECK(cff_operator(pair, f, mu).value == doctest::Approx(1.25));
  CHECK(cff_operator(pair, f, mu, PermutationPolicy::canonical, LevelMode::levelset).value == doctest::Approx(1.5));
  CHECK(cff_operator(pair, f, mu, PermutationPolicy::canonical, LevelMode::clamp).value == doctest::Approx(1.0));

  CHECK(d_choquet(dissim::abs_diff(), ops::sum(), f, mu).value == doctest::Approx(3.5));
  CHECK(d_choquet(dissim::abs_diff(), ops::sum(), f, mu, PermutationPolicy::canonical, LevelMode::levelset).value ==
        doctest::Approx(4.5));
  CHECK_THROWS_AS(d_choquet(dissim::abs_diff(), ops::sum(), f, mu, PermutationPolicy::canonical, LevelMode::clamp),
                  MalformedInput);
}

TEST_CASE("d-Choquet and the copula pair on the two-point example") {
  const GroundSet g(2);
  const PointFunction f(g, {0.5, 1.0});
  const auto mu = two_point_measure();
  CHECK(d_choquet(dissim::squared_diff(), ops::product(), f, mu).value == doctest::Approx(0.35));
  CHECK(d_choquet(dissim::abs_diff(), ops::product(), f, mu).value == doctest::Approx(choquet(f, mu)));
  const auto mm = FPair::make(ops::copula_m(), ops::copula_m());
  CHECK(cff_operator(mm, f, mu).value == doctest::Approx(0.5));
}

TEST_CASE("fc with the product is the Choquet integral") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet g(n);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      Rng rng(seed + 1000 * n);
      const auto mu = random_measure(g, SamplerClass::monotone, rng);
      const auto f = random_point_function(g, rng, FunctionDomain::bounded);
      CHECK(fc_operator(ops::product(), f, mu, mu).value == doctest::Approx(choquet(f, mu)).epsilon(1e-12));
      CHECK(fc_levelset(ops::product(), f, mu) == doctest::Approx(choquet(f, mu)).epsilon(1e-12));
    }
  }
}

TEST_CASE("reverse chains dualize to forward chains") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet g(n);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      Rng rng(seed + 77 * n);
      const auto mu = random_measure(g, SamplerClass::monotone, rng);
      const auto muhat = dominated(mu, rng);
      const auto f = random_point_function(g, rng, FunctionDomain::bounded);
      const auto [nu, nuhat] = reverse_dual_pair(mu, muhat);
      for (const auto& op : {ops::min(), ops::product(), ops::a_times_x_squared()}) {
        CHECK(rc_operator(op, f, mu, muhat).value ==
              doctest::Approx(fc_operator(op, f, nu, nuhat).value).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("dominance and duality preconditions") {
  const GroundSet g(2);
  const auto mu = two_point_measure();
  const MonotoneMeasure big(SetFunction(g, {0.0, 0.6, 0.4, 1.0}));
  const PointFunction f(g, {0.5, 1.0});
  CHECK_THROWS_AS(fc_operator(ops::min(), f, mu, big), PreconditionError);
  CHECK_THROWS_AS(rc_operator(ops::min(), f, mu, big), PreconditionError);
  const MonotoneMeasure heavier(SetFunction(g, {0.0, 0.5, 0.4, 2.0}));
  CHECK_THROWS_AS(reverse_dual_pair(heavier, mu), PreconditionError);
}

TEST_CASE("decomposition integral") {
  const GroundSet g(3);
  const PointFunction f(g, {0.4, 0.2, 0.3});
  const auto mu = MonotoneMeasure::unanimity_all(g);
  const auto sys = DecompositionSystem::explicit_list(
      g, {Collection(g, {Subset::of({1}), Subset::of({1, 3}), g.full()})});
  const auto lp = f_decomposition_direct(ops::product(), sys, f, mu, DecompositionMethod::lp_vertex);
  CHECK(lp.value == doctest::Approx(0.4));
  const auto grid = f_decomposition_direct(ops::product(), sys, f, mu, DecompositionMethod::grid, 0.05);
  CHECK(grid.value <= lp.value + 1e-12);
  CHECK(grid.value == doctest::Approx(0.4));

  const auto part = DecompositionSystem::symbolic(g, SystemTag::part);
  CHECK(f_decomposition_direct(ops::product(), part, f, mu, DecompositionMethod::partition_exact).value ==
        doctest::Approx(0.9));
  CHECK_THROWS_AS(f_decomposition_direct(ops::min(), sys, f, mu, DecompositionMethod::lp_vertex), PreconditionError);
  CHECK_THROWS_AS(f_decomposition_direct(ops::product(), sys, f, mu, DecompositionMethod::partition_exact),
                  PreconditionError);
  CHECK_THROWS_AS(f_decomposition_direct(ops::product(), sys, f, mu, DecompositionMethod::grid), PreconditionError);
}

TEST_CASE("on partitions the vertex enumerator and the exact method agree") {
  for (int n = 2; n <= 4; ++n) {
    const GroundSet g(n);
    const auto part = DecompositionSystem::symbolic(g, SystemTag::part);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      Rng rng(seed + 5 * n);
      const auto mu = random_measure(g, SamplerClass::monotone, rng);
      const auto f = random_point_function(g, rng, FunctionDomain::bounded);
      const double exact = f_decomposition_direct(ops::product(), part, f, mu, DecompositionMethod::partition_exact).value;
      const double lp = f_decomposition_direct(ops::product(), part, f, mu, DecompositionMethod::lp_vertex).value;
      CHECK(lp == doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("interaction operators") {
  const GroundSet g(3);
  CHECK_THROWS_AS(InteractionOperator::make(make_fca(FcaKind::sup, g)), PreconditionError);
  CHECK_THROWS_AS(InteractionOperator::make(make_fca(FcaKind::prod, g)), PreconditionError);
  const auto inf = InteractionOperator::make(make_fca(FcaKind::inf, g));
  const auto prod = InteractionOperator::make(make_fca(FcaKind::prod, g), FunctionDomain::unit);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    const auto mu = random_measure(g, SamplerClass::monotone, rng);
    const auto f = random_point_function(g, rng, FunctionDomain::unit);
    CHECK(ie_operator(ops::product(), inf, f, mu) == doctest::Approx(choquet(f, mu, 4)).epsilon(1e-12));
    CHECK(ie_operator(ops::product(), prod, f, mu) ==
          doctest::Approx(lovasz_generalized(ops::product(), prod.fca(), f, mu)).epsilon(1e-12));
  }
  const auto mu = MonotoneMeasure::unanimity_all(g);
  CHECK_THROWS_AS(ie_operator(ops::product(), prod, PointFunction(g, {0.5, 2.0, 0.1}), mu), PreconditionError);
}
