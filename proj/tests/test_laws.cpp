#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "csl/error.hpp"
#include "csl/laws.hpp"

using namespace csl;

namespace {

SweepConfig quick(std::vector<int> ns, int trials = 100) {
  SweepConfig c;
  c.ns = std::move(ns);
  c.trials = trials;
  c.seed = 3;
  return c;
}

CSConfig l5_complement_sup(GroundSet g) {
  return CSConfig{DecompositionSystem::symbolic(g, SystemTag::one), RelationSpec{RelationKind::complement, {}},
                  lcat::l5(ops::product()), make_fca(FcaKind::sup, g), make_fca(FcaKind::sup, g)};
}

std::vector<double> measure_containing_1(int n) {
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t b = 0; b < v.size(); ++b) v[b] = (b & 1u) ? 1.0 : 0.0;
  return v;
}

}  // namespace

TEST_CASE("section subadditivity") {
  ConditionSubject min{ops::min(), {}, {}, {}};
  CHECK(check_condition(ConditionKind::section_subadditive, min).holds);
  ConditionSubject sq{ops::a_times_x_squared(), {}, {}, {}};
  const auto r = check_condition(ConditionKind::section_subadditive, sq);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.point.size() == 3);
  const double a = r.point[0], x = r.point[1], y = r.point[2];
  CHECK(a * (x + y) * (x + y) > a * x * x + a * y * y);
  CHECK(r.lhs > r.rhs);
  // At a = 1, x = y = 1: 4 > 2.
  const BinaryOp op = ops::a_times_x_squared();
  CHECK(op(1, 2) == 4);
  CHECK(op(1, 1) + op(1, 1) == 2);
}

TEST_CASE("triangle inequality of dissimilarity sections") {
  ConditionSubject abs{ops::product(), dissim::abs_diff(), {}, {}};
  CHECK(check_condition(ConditionKind::triangle, abs).holds);
  ConditionSubject sqrt{ops::product(), dissim::sqrt_abs_diff(), {}, {}};
  CHECK(check_condition(ConditionKind::triangle, sqrt).holds);
  ConditionSubject sq{ops::product(), dissim::squared_diff(), {}, {}};
  CHECK_FALSE(check_condition(ConditionKind::triangle, sq).holds);
}

TEST_CASE("other conditions") {
  CHECK(check_condition(ConditionKind::zero_section, {ops::product(), {}, {}, {}}).holds);
  CHECK_FALSE(check_condition(ConditionKind::zero_section, {ops::sum(), {}, {}, {}}).holds);
  CHECK(check_condition(ConditionKind::product_form, {ops::a_times_min_x_1(), {}, {}, {}}).holds == false);
  CHECK(check_condition(ConditionKind::product_form, {ops::product(), {}, {}, {}}).holds);
  CHECK(check_condition(ConditionKind::product_form, {ops::by_name("g*b[sq]"), {}, {}, {}}).holds);
  CHECK_FALSE(check_condition(ConditionKind::product_form, {ops::min(), {}, {}, {}}).holds);
  CHECK(check_condition(ConditionKind::nondecreasing, {ops::min(), {}, {}, {}}).holds);
  CHECK_FALSE(check_condition(ConditionKind::nondecreasing, {ops::a_times_abs_1_minus_b(), {}, {}, {}}).holds);
  CHECK(check_condition(ConditionKind::equal_pair, {{}, {}, ops::product(), ops::product()}).holds);
  CHECK_FALSE(
      check_condition(ConditionKind::equal_pair, {{}, {}, ops::product(), ops::by_name("scale(0.5,prod)")}).holds);
  CHECK(check_condition(ConditionKind::pairwise_2_increasing, {{}, {}, ops::copula_m(), ops::copula_m()}).holds);
}

TEST_CASE("symmetric grids") {
  const auto all = symmetric_grid(3, 16, false);
  CHECK(all.size() == 969);
  for (const auto& g : all) {
    CHECK(g.size() == 4);
    CHECK(g[0] == 0);
    CHECK(std::is_sorted(g.begin(), g.end()));
  }
  const auto caps = symmetric_grid(2, 16, true);
  CHECK(caps.size() == 9);
  for (const auto& g : caps) CHECK(g.back() == 8);
  const auto m = symmetric_grid_measure(GroundSet(2), {0, 4, 8});
  CHECK(m(Subset::of({2})) == 0.5);
  CHECK(m.total() == 1.0);
}

TEST_CASE("law identifiers") {
  const auto& ids = equivalence_law_ids();
  for (const char* id : {"thm4_3", "thm_n2", "thm4_13", "thm4_11", "cc_case", "prop4_6", "prop_n3f", "prop_n4c",
                         "duality_c5b", "ie_equals_cs", "sug_levelset", "idem_single_sets", "idem_chain",
                         "idem_dissimilarity", "ex3_5"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  }
  CHECK_THROWS_AS(verify_equivalence("no_such_law", quick({2})), MalformedInput);
}

TEST_CASE("verdicts") {
  auto c = quick({2, 3});
  c.ops = {"min", "prod"};
  CHECK(verify_equivalence("thm4_3", c).verdict == Verdict::holds_on_sample);

  c.ops = {"a*x^2"};
  c.ns = {3};
  c.trials = 500;
  const auto r = verify_equivalence("thm4_3", c);
  CHECK(r.verdict == Verdict::refuted_with_witness);
  REQUIRE(r.witness);
  CHECK(r.mode == "hunt");
  CHECK(std::any_of(r.hypotheses.begin(), r.hypotheses.end(), [](const ConditionReport& h) { return !h.holds; }));

  auto d = quick({3});
  d.deltas = {"abs"};
  d.ops = {"prod"};
  CHECK(verify_equivalence("thm4_13", d).verdict == Verdict::holds_on_sample);
  d.deltas = {"sq"};
  CHECK(verify_equivalence("thm4_13", d).verdict == Verdict::refuted_with_witness);

  CHECK(verify_equivalence("ex3_5", quick({3})).verdict == Verdict::holds_on_sample);
}

TEST_CASE("standing hypotheses gate the sweep") {
  auto c = quick({2, 3});
  c.ops = {"min"};
  c.measure = SamplerClass::monotone;
  const auto r = verify_equivalence("thm4_3", c);
  CHECK(r.verdict == Verdict::precondition_unmet);
  CHECK_FALSE(r.witness);
}

TEST_CASE("a forced hunt on asymmetric measures finds the two-point counterexample class") {
  auto c = quick({2}, 500);
  c.ops = {"min"};
  c.measure = SamplerClass::monotone;
  const auto r = find_counterexample("thm4_3", c);
  REQUIRE(r.verdict == Verdict::refuted_with_witness);
  const auto again = replay("thm4_3", c, r.witness->instance);
  bool differs = false;
  for (const auto& x : again) differs = differs || !x.ok;
  CHECK(differs);
}

TEST_CASE("witness replay is bit-exact and independent of the thread count") {
  auto c = quick({3}, 500);
  c.ops = {"a*x^2"};
  c.threads = 1;
  const auto one = verify_equivalence("thm4_3", c);
  c.threads = 4;
  const auto four = verify_equivalence("thm4_3", c);
  REQUIRE(one.witness);
  REQUIRE(four.witness);
  CHECK(one.witness->index == four.witness->index);
  CHECK(one.witness->instance.f == four.witness->instance.f);
  const auto again = replay("thm4_3", c, one.witness->instance);
  REQUIRE(again.size() == one.witness->comparisons.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].lhs == one.witness->comparisons[i].lhs);
    CHECK(again[i].rhs == one.witness->comparisons[i].rhs);
  }
}

TEST_CASE("the L5 subadditivity counterexample") {
  PropertySweep s;
  s.config = l5_complement_sup;
  s.label = "L5(prod) complement sup";
  Instance in;
  in.n = 3;
  in.f = {1, 1, 0};
  in.g = {1, 0, 1};
  in.mu = in.muhat = measure_containing_1(3);
  const auto cmp = replay_property(OperatorProperty::subadditive, s, in);
  REQUIRE(cmp.size() == 1);
  CHECK(cmp[0].lhs == doctest::Approx(5.0));
  CHECK(cmp[0].rhs == doctest::Approx(4.0));
  CHECK_FALSE(cmp[0].ok);
  s.ns = {3};
  const auto r = check_operator_property(OperatorProperty::subadditive, s);
  CHECK(r.verdict == Verdict::refuted_with_witness);
}

TEST_CASE("operator properties") {
  PropertySweep s;
  s.ns = {2, 3};
  s.trials = 60;
  s.config = [](GroundSet g) {
    return CSConfig{DecompositionSystem::symbolic(g, SystemTag::chain), RelationSpec{RelationKind::rplus, {}},
                    lcat::l4(ops::product()), make_fca(FcaKind::inf, g), make_fca(FcaKind::inf, g)};
  };
  CHECK(check_operator_property(OperatorProperty::homogeneous, s).verdict == Verdict::holds_on_sample);
  CHECK(check_operator_property(OperatorProperty::idempotent, s).verdict == Verdict::holds_on_sample);
  CHECK(check_operator_property(OperatorProperty::zero, s).verdict == Verdict::holds_on_sample);

  s.config = [](GroundSet g) {
    return CSConfig{DecompositionSystem::symbolic(g, SystemTag::chain), RelationSpec{RelationKind::consecutive, {}},
                    lcat::l1(2.0), make_fca(FcaKind::inf, g), make_fca(FcaKind::inf, g)};
  };
  CHECK(check_operator_property(OperatorProperty::idempotent, s).verdict == Verdict::refuted_with_witness);

  s.config = [](GroundSet g) {
    return CSConfig{DecompositionSystem::symbolic(g, SystemTag::part), RelationSpec{RelationKind::diagonal, {}},
                    lcat::l2(ops::sum()), make_fca(FcaKind::inf, g), make_fca(FcaKind::inf, g)};
  };
  CHECK(check_operator_property(OperatorProperty::zero, s).verdict == Verdict::precondition_unmet);
}
