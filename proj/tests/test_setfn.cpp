#include <doctest.h>

#include <cmath>

#include "csl/error.hpp"
#include "csl/random.hpp"
#include "csl/setfn.hpp"

using namespace csl;

namespace {

// Mobius transform straight from the definition, enumerating subsets of D by bit tricks.
std::vector<double> brute_mobius(const SetFunction& m) {
  const auto n = m.ground().subset_count();
  std::vector<double> out(n, 0.0);
  for (std::uint32_t d = 0; d < n; ++d) {
    for (std::uint32_t c = d;; c = (c - 1) & d) {
      const int sign = (std::popcount(d & ~c) % 2) ? -1 : 1;
      out[d] += sign * m(Subset(c));
      if (c == 0) break;
    }
  }
  return out;
}

bool brute_monotone(const SetFunction& m) {
  const auto n = m.ground().subset_count();
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if ((a & b) == a && m(Subset(a)) > m(Subset(b)) + 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("subset encoding and algebra") {
  const GroundSet g(4);
  const Subset s = Subset::of({1, 3});
  CHECK(s.bits() == 0b0101u);
  CHECK(s.size() == 2);
  CHECK(s.to_string() == "{1,3}");
  CHECK(g.complement(s) == Subset::of({2, 4}));
  CHECK(Subset::singleton(4).bits() == 8u);
  CHECK(g.full().size() == 4);
  CHECK(Subset().to_string() == "{}");
}

TEST_CASE("ground set bounds") {
  CHECK_THROWS_AS(GroundSet(0), MalformedInput);
  CHECK_THROWS_AS(GroundSet(13), CapacityError);
  CHECK(GroundSet(12).subset_count() == 4096u);
}

TEST_CASE("set function construction rejects bad tables") {
  const GroundSet g(2);
  CHECK_THROWS_AS(SetFunction(g, {0.0, 1.0, 1.0}), MalformedInput);
  CHECK_THROWS_AS(SetFunction(g, {0.5, 1.0, 1.0, 1.0}), MalformedInput);
  CHECK_THROWS_AS(SetFunction(g, {0.0, NAN, 1.0, 1.0}), MalformedInput);
  CHECK_THROWS_AS(MonotoneMeasure(SetFunction(g, {0.0, 1.0, 0.5, 0.8})), PreconditionError);
}

TEST_CASE("Mobius transform matches the definition and round-trips") {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Rng rng(seed * 31 + static_cast<std::uint64_t>(n));
      const GroundSet g(n);
      std::vector<double> v(g.subset_count());
      for (std::size_t b = 1; b < v.size(); ++b) v[b] = rng.uniform(-2.0, 2.0);
      const SetFunction m(g, v);
      const SetFunction mob = mobius_transform(m);
      const auto ref = brute_mobius(m);
      const SetFunction back = zeta_transform(mob);
      for (std::uint32_t b = 0; b < g.subset_count(); ++b) {
        CHECK(mob(Subset(b)) == doctest::Approx(ref[b]).epsilon(1e-12));
        CHECK(std::abs(back(Subset(b)) - m(Subset(b))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("Mobius transform of the unanimity measure") {
  const GroundSet g(3);
  const auto mob = mobius_transform(MonotoneMeasure::unanimity_all(g));
  // 1 on every nonempty set: Mob is (-1)^{|D|+1}.
  for (std::uint32_t b = 1; b < 8; ++b) CHECK(mob(Subset(b)) == doctest::Approx(Subset(b).size() % 2 ? 1.0 : -1.0));
}

TEST_CASE("validate_measure agrees with a pairwise monotonicity scan") {
  const GroundSet g(3);
  Rng rng(7);
  int monotone = 0;
  for (int t = 0; t < 300; ++t) {
    std::vector<double> v(8);
    for (std::size_t b = 1; b < 8; ++b) v[b] = std::round(rng.uniform(0.0, 4.0));
    const SetFunction m(g, v);
    const auto rep = validate_measure(m, MeasureClass::monotone);
    CHECK(rep.ok == brute_monotone(m));
    if (!rep.ok) {
      REQUIRE(rep.witness);
      CHECK(rep.witness->first.subset_of(rep.witness->second));
      CHECK(m(rep.witness->first) > m(rep.witness->second));
    }
    monotone += rep.ok;
  }
  CHECK(monotone > 0);
  CHECK(monotone < 300);
}

TEST_CASE("measure classes") {
  const GroundSet g(2);
  const SetFunction cap(g, {0.0, 0.5, 0.4, 1.0});
  CHECK(validate_measure(cap, MeasureClass::capacity).ok);
  CHECK_FALSE(validate_measure(cap, MeasureClass::symmetric).ok);
  const SetFunction sym(g, {0.0, 1.0, 1.0, 2.0});
  CHECK(validate_measure(sym, MeasureClass::symmetric).ok);
  CHECK_FALSE(validate_measure(sym, MeasureClass::capacity).ok);
  const SetFunction sgn(g, {0.0, 1.0, -1.0, 0.5});
  CHECK(validate_measure(sgn, MeasureClass::signed_fn).ok);
  CHECK_FALSE(validate_measure(sgn, MeasureClass::monotone).ok);
}

TEST_CASE("dual measure") {
  const GroundSet g(2);
  const MonotoneMeasure mu(SetFunction(g, {0.0, 0.5, 0.4, 1.0}));
  const auto d = dual_measure(mu);
  CHECK(d(Subset::of({1})) == doctest::Approx(0.6));
  CHECK(d(Subset::of({2})) == doctest::Approx(0.5));
  CHECK(d.total() == doctest::Approx(1.0));
  CHECK(dual_measure(d) == mu);
  const MonotoneMeasure other(SetFunction(g, {0.0, 0.5, 0.4, 2.0}));
  CHECK_THROWS_AS(dual_measure(mu, other), PreconditionError);
}

TEST_CASE("random measures are valid and reproducible") {
  for (int n = 1; n <= 5; ++n) {
    const GroundSet g(n);
    for (auto cls : {SamplerClass::monotone, SamplerClass::capacity, SamplerClass::symmetric, SamplerClass::symmetric_capacity}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto a = random_measure(g, cls, seed);
        CHECK(a == random_measure(g, cls, seed));
        CHECK(brute_monotone(a.set_function()));
        if (cls == SamplerClass::capacity || cls == SamplerClass::symmetric_capacity) CHECK(a.total() == doctest::Approx(1.0));
        if (cls == SamplerClass::symmetric || cls == SamplerClass::symmetric_capacity) {
          CHECK(validate_measure(a.set_function(), MeasureClass::symmetric).ok);
        }
      }
    }
  }
}

TEST_CASE("point functions") {
  const GroundSet g(3);
  const PointFunction f(g, {0.4, 0.2, 0.3});
  CHECK(f(1) == 0.4);
  CHECK(f.min_over(Subset::of({1, 3})) == 0.3);
  CHECK(f.max_over(Subset::of({2, 3})) == 0.3);
  CHECK(f.min_over(Subset()) == 0.0);
  CHECK(f.level_set(0.3) == Subset::of({1, 3}));
  CHECK(ascending_order(f) == std::vector<int>{2, 3, 1});
  CHECK(ascending_order(PointFunction(g, {0.5, 0.5, 0.1})) == std::vector<int>{3, 1, 2});
  CHECK_THROWS_AS(PointFunction(g, {0.1, -0.2, 0.0}), MalformedInput);
  CHECK_THROWS_AS(PointFunction(g, {0.1, 0.2}), MalformedInput);
  CHECK(f.plus(f).scaled(0.5) == f);
}

TEST_CASE("rng streams are independent of evaluation order") {
  Rng a = Rng::stream(5, 17);
  Rng b = Rng::stream(5, 17);
  Rng c = Rng::stream(5, 18);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
