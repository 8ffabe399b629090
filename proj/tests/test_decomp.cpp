#include <doctest.h>

#include <set>

#include "csl/decomp.hpp"
#include "csl/error.hpp"

using namespace csl;

namespace {

// Chains of nonempty sets, counted by their outermost member: c(S) = 1 + sum over proper
// nonempty T of c(T).
std::size_t chain_count_oracle(int n) {
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::size_t> c(full + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    c[s] = 1;
    for (std::uint32_t t = (s - 1) & s; t != 0; t = (t - 1) & s) c[s] += c[t];
  }
  std::size_t total = 0;
  for (std::uint32_t s = 1; s <= full; ++s) total += c[s];
  return total;
}

}  // namespace

TEST_CASE("partition counts are Bell numbers") {
  const std::size_t bell[] = {1, 2, 5, 15, 52, 203};
  for (int n = 1; n <= 6; ++n) {
    std::size_t count = 0;
    std::set<std::vector<std::uint32_t>> seen;
    for_each_partition(GroundSet(n), [&](const Collection& c) {
      ++count;
      CHECK(c.is_partition());
      std::vector<std::uint32_t> key;
      for (Subset s : c.members()) key.push_back(s.bits());
      std::sort(key.begin(), key.end());
      seen.insert(key);
    });
    CHECK(count == bell[n - 1]);
    CHECK(seen.size() == count);
  }
}

TEST_CASE("partition enumeration guard") {
  CHECK_THROWS_AS(for_each_partition(GroundSet(10), [](const Collection&) {}), CapacityError);
}

TEST_CASE("chain counts") {
  CHECK(count_chains(GroundSet(2)) == 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(count_chains(GroundSet(n)) == chain_count_oracle(n));
    CHECK(enumerate_chains(GroundSet(n)).size() == chain_count_oracle(n));
  }
  CHECK(count_chains(GroundSet(3)) == 25);
  CHECK(count_chains(GroundSet(4)) == 149);
}

TEST_CASE("the five chains of a two-point set") {
  const GroundSet g(2);
  std::set<std::vector<std::uint32_t>> got;
  for (const auto& c : enumerate_chains(g)) {
    CHECK(c.is_chain());
    std::vector<std::uint32_t> key;
    for (Subset s : c.members()) key.push_back(s.bits());
    got.insert(key);
  }
  const std::set<std::vector<std::uint32_t>> want{{1}, {2}, {3}, {3, 1}, {3, 2}};
  CHECK(got == want);
}

TEST_CASE("chains with bounded length") {
  const GroundSet g(3);
  for (const auto& c : enumerate_chains(g, 2)) CHECK(c.size() <= 2);
  // 7 single sets plus the 12 strictly nested pairs.
  CHECK(count_chains(g, 2) == 7 + 12);
  CHECK_THROWS_AS(enumerate_chains(GroundSet(6)), CapacityError);
  CHECK(count_chains(GroundSet(6), 1) == 63);
}

TEST_CASE("relations on a chain") {
  const GroundSet g(3);
  const Collection chain(g, {g.full(), Subset::of({1, 2}), Subset::of({1})});
  REQUIRE(chain.is_chain());
  const auto plus = make_relation(chain, RelationKind::rplus);
  REQUIRE(plus.pairs.size() == 3);
  CHECK(plus.pairs[0] == SubsetPair{g.full(), Subset::of({1, 2})});
  CHECK(plus.pairs[2] == SubsetPair{Subset::of({1}), Subset()});
  const auto minus = make_relation(chain, RelationKind::rminus);
  REQUIRE(minus.pairs.size() == 3);
  CHECK(minus.pairs[0] == SubsetPair{g.full(), Subset()});
  CHECK(minus.pairs[2] == SubsetPair{Subset::of({1}), Subset::of({1, 2})});
  const auto cons = make_relation(chain, RelationKind::consecutive);
  CHECK(cons.pairs.size() == 2);
  const auto comp = make_relation(chain, RelationKind::complement);
  CHECK(comp.pairs[1] == SubsetPair{Subset::of({1, 2}), Subset::of({3})});
  const auto diag = make_relation(chain, RelationKind::diagonal);
  CHECK(diag.pairs.size() == 3);
}

TEST_CASE("chain relations need a chain") {
  const GroundSet g(3);
  const Collection part(g, {Subset::of({1}), Subset::of({2, 3})});
  CHECK(part.is_partition());
  CHECK_FALSE(part.is_chain());
  CHECK_THROWS_AS(make_relation(part, RelationKind::rplus), PreconditionError);
}

TEST_CASE("custom relations") {
  const GroundSet g(3);
  const Collection c(g, {Subset::of({1}), Subset::of({1, 3})});
  const auto r = make_relation(c, std::vector<SubsetPair>{{Subset::of({1, 3}), Subset::of({1})}, {Subset::of({1}), Subset()}});
  CHECK(r.pairs.size() == 2);
  CHECK_THROWS_AS(make_relation(c, std::vector<SubsetPair>{{Subset::of({2}), Subset()}}), MalformedInput);
}

TEST_CASE("collections reject empty members and foreign points") {
  const GroundSet g(2);
  CHECK_THROWS(Collection(g, {Subset()}));
  CHECK_THROWS(Collection(g, {Subset::of({3})}));
}

TEST_CASE("symbolic systems") {
  const GroundSet g(3);
  CHECK(DecompositionSystem::symbolic(g, SystemTag::part).expand().size() == 5);
  CHECK(DecompositionSystem::symbolic(g, SystemTag::chain).expand().size() == 25);
  const auto one = DecompositionSystem::symbolic(g, SystemTag::one).expand();
  REQUIRE(one.size() == 1);
  CHECK(one[0].size() == 7);
  const auto singles = DecompositionSystem::symbolic(g, SystemTag::singletons).expand();
  CHECK(singles.size() == 7);
  for (const auto& c : singles) CHECK(c.size() == 1);
  CHECK(default_relation(SystemTag::chain) == RelationKind::rplus);
  CHECK(default_relation(SystemTag::part) == RelationKind::diagonal);
}

TEST_CASE("canonical order is stable") {
  const GroundSet g(4);
  const auto a = DecompositionSystem::symbolic(g, SystemTag::chain).expand();
  const auto b = DecompositionSystem::symbolic(g, SystemTag::chain).expand();
  CHECK(a == b);
}
