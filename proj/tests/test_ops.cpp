#include <doctest.h>

#include "csl/error.hpp"
#include "csl/ops.hpp"

using namespace csl;

TEST_CASE("named operations") {
  for (const auto& name : ops::names()) CHECK(ops::by_name(name).label() == name);
  CHECK(ops::by_name("min")(0.3, 0.7) == 0.3);
  CHECK(ops::by_name("a*x^2")(2.0, 3.0) == 18.0);
  CHECK(ops::by_name("a*min(x,1)")(2.0, 3.0) == 2.0);
  CHECK(ops::by_name("a*|1-b|")(2.0, 0.25) == 1.5);
  CHECK(ops::by_name("copula:W")(0.3, 0.4) == 0.0);
  CHECK(ops::by_name("copula:W")(0.8, 0.7) == doctest::Approx(0.5));
  CHECK(ops::by_name("g*b[sq]")(3.0, 2.0) == 18.0);
  const BinaryOp half = ops::by_name("scale(0.5,prod)");
  CHECK(half.label() == "scale(0.5,prod)");
  CHECK(half(2.0, 3.0) == 3.0);
  CHECK_THROWS_AS(ops::by_name("nope"), MalformedInput);
  CHECK_THROWS_AS(ops::by_name("scale(x,prod)"), MalformedInput);
}

TEST_CASE("monotonicity probe") {
  CHECK_FALSE(check_nondecreasing(ops::min()));
  CHECK_FALSE(check_nondecreasing(ops::product()));
  CHECK_FALSE(check_nondecreasing(ops::a_times_x_squared()));
  const auto v = check_nondecreasing(ops::a_times_abs_1_minus_b());
  REQUIRE(v);
  CHECK(v->what.find("second") != std::string::npos);
}

TEST_CASE("dissimilarity axioms") {
  CHECK_FALSE(check_dissimilarity_axioms(dissim::abs_diff()));
  CHECK_FALSE(check_dissimilarity_axioms(dissim::squared_diff()));
  CHECK_FALSE(check_dissimilarity_axioms(dissim::sqrt_abs_diff()));
  const Dissimilarity lopsided("lopsided", [](double x, double y) { return x > y ? x - y : 2 * (y - x); });
  CHECK(check_dissimilarity_axioms(lopsided));
  const Dissimilarity flat("flat", [](double, double) { return 1.0; });
  CHECK(check_dissimilarity_axioms(flat));
}

TEST_CASE("F pairs need F1 >= F2") {
  CHECK_NOTHROW(FPair::make(ops::product(), ops::by_name("scale(0.5,prod)")));
  CHECK_THROWS_AS(FPair::make(ops::by_name("scale(0.5,prod)"), ops::product()), PreconditionError);
  CHECK(FPair::make(ops::copula_m(), ops::copula_m()).label() == "(copula:M,copula:M)");
}

TEST_CASE("L catalog") {
  const BinaryOp prod = ops::product();
  CHECK(lcat::l1(2.0)(0.5, 2.0, 9, 9) == 2.25);
  CHECK(lcat::l2(prod)(2, 9, 3, 9) == 6);
  CHECK(lcat::l3(prod)(9, 2, 9, 3) == 6);
  CHECK(lcat::l4(prod)(2, 9, 3, 1) == 4);
  CHECK(lcat::l4(prod)(2, 9, 1, 3) == 0);
  CHECK(lcat::l5(prod)(3, 1, 2, 9) == 4);
  CHECK(lcat::l5(prod)(1, 3, 2, 9) == 0);
  CHECK(lcat::l6(dissim::squared_diff(), prod)(3, 1, 2, 9) == 8);
  CHECK(lcat::l7(FPair::make(prod, ops::by_name("scale(0.5,prod)")))(2, 2, 3, 9) == 3);
  CHECK_THROWS_AS(lcat::l1(0.5), PreconditionError);
}
