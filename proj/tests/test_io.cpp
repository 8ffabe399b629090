#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "csl/error.hpp"
#include "csl/io.hpp"

using namespace csl;
using csl::io::json;

namespace {

json load(const std::string& rel) {
  std::ifstream in(std::string(CSL_SOURCE_DIR) + "/" + rel);
  REQUIRE(in);
  return json::parse(in);
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.1 + 0.2) == "0.3");
  CHECK(io::format_number(1.0) == "1");
  CHECK(io::round12(0.30000000000000004) == 0.3);
}

TEST_CASE("subset parsing") {
  const GroundSet g(3);
  CHECK(io::parse_subset("{1,3}", g, "s") == Subset::of({1, 3}));
  CHECK(io::parse_subset("1, 3", g, "s") == Subset::of({1, 3}));
  CHECK(io::parse_subset(json::array({2, 3}), g, "s") == Subset::of({2, 3}));
  CHECK(io::parse_subset(json::array({"1"}), g, "s") == Subset::of({1}));
  CHECK(io::parse_subset("X", g, "s") == g.full());
  CHECK(io::parse_subset("{}", g, "s") == Subset());
  CHECK_THROWS_AS(io::parse_subset("{4}", g, "s"), MalformedInput);
  CHECK_THROWS_AS(io::parse_subset("{a}", g, "s"), MalformedInput);
  CHECK(io::format_subset(Subset::of({1, 2})) == "{1,2}");
}

TEST_CASE("measure round trip") {
  for (int n = 1; n <= 4; ++n) {
    const auto mu = random_measure(GroundSet(n), SamplerClass::monotone, 5);
    const auto j = io::measure_to_json(mu.set_function());
    CHECK(io::measure_from_json(j, "mu") == mu);
    CHECK(io::set_function_from_json(json::parse(j.dump()), "mu") == mu.set_function());
  }
}

TEST_CASE("missing and duplicate subsets are named") {
  const json missing = load("tests/data/missing_subset.json");
  const auto msg = error_of([&] { io::parse_problem(missing); });
  CHECK(msg.find("mu.values") != std::string::npos);
  CHECK(msg.find("{2}") != std::string::npos);
  const json dup = {{"n", 1}, {"values", {{"{}", 0}, {"{1}", 1}, {"1", 1}}}};
  CHECK_THROWS_AS(io::set_function_from_json(dup, "mu"), MalformedInput);
}

TEST_CASE("functions from arrays and objects") {
  const GroundSet g(3);
  CHECK(io::function_from_json(json::array({0.1, 0.2, 0.3}), g, "f") == PointFunction(g, {0.1, 0.2, 0.3}));
  CHECK(io::function_from_json(json{{"1", 0.1}, {"2", 0.2}, {"3", 0.3}}, g, "f") == PointFunction(g, {0.1, 0.2, 0.3}));
  CHECK_THROWS_AS(io::function_from_json(json::array({0.1, 0.2}), g, "f"), MalformedInput);
}

TEST_CASE("component descriptors") {
  CHECK(io::build_op("a*x^2", "op")(2, 3) == 18);
  CHECK(io::build_op(json{{"kind", "scale"}, {"c", 0.5}, {"inner", "prod"}}, "op")(2, 3) == 3);
  CHECK(io::build_delta("sq", "delta")(1, 3) == 4);
  CHECK(io::build_l(json{{"kind", "L4"}, {"op", "min"}}, "L")(0.5, 0, 0.75, 0.25) == 0.5);
  const auto msg = error_of([] { io::build_op("mn", "operator.config.L.op"); });
  CHECK(msg.find("operator.config.L.op") != std::string::npos);
  CHECK(msg.find("mn") != std::string::npos);
}

TEST_CASE("shipped problems evaluate to their hand values") {
  const std::map<std::string, double> want{
      {"two_point_fc_min.json", 0.9},      {"two_point_cs_chain.json", 1.0},      {"symmetric_tie_levelset.json", 0.5},
      {"partitions_cs.json", 0.9},     {"nested_decomposition.json", 0.4}, {"zero_function.json", 0.0},
      {"choquet_form4.json", 0.5}};
  for (const auto& [file, value] : want) {
    CAPTURE(file);
    const auto p = io::parse_problem(load("problems/" + file));
    const json r = io::evaluate(p);
    CHECK(std::abs(r.at("value").get<double>() - value) <= 1e-12);

    // Normalizing is a fixed point and does not change the value.
    const json norm = io::normalized_problem(p);
    const auto q = io::parse_problem(norm);
    CHECK(io::normalized_problem(q) == norm);
    CHECK(io::evaluate(q).at("value").get<double>() == r.at("value").get<double>());
  }
}

TEST_CASE("tie policy override") {
  const auto p = io::parse_problem(load("problems/two_point_tie.json"));
  const json r = io::evaluate(p, io::EvalOverrides{std::string("all"), {}, {}});
  CHECK(r.at("min").get<double>() == doctest::Approx(0.9));
  CHECK(r.at("max").get<double>() == doctest::Approx(1.0));
  CHECK_FALSE(r.at("well_defined").get<bool>());
}

TEST_CASE("instances round trip at full precision") {
  Instance in;
  in.n = 2;
  in.f = {0.1 + 0.2, 1.0 / 3.0};
  in.g = {0.7, 0.0};
  in.mu = {0, 0.5, 0.4, 1};
  in.muhat = in.mu;
  in.scalar = 2.0 / 7.0;
  in.specimen = 1;
  const Instance back = io::instance_from_json(json::parse(io::instance_to_json(in).dump()), "instance");
  CHECK(back.f == in.f);
  CHECK(back.g == in.g);
  CHECK(back.mu == in.mu);
  CHECK(back.scalar == in.scalar);
  CHECK(back.specimen == in.specimen);
}

TEST_CASE("the shipped manifest parses") {
  const auto m = io::parse_manifest(load("manifests/default.json"));
  CHECK_FALSE(m.entries.empty());
  const auto& ids = equivalence_law_ids();
  for (const auto& e : m.entries) {
    CAPTURE(e.name);
    if (e.is_property) {
      CHECK_NOTHROW(operator_property_from_string(e.law));
      CHECK(static_cast<bool>(e.property.config));
    } else {
      CHECK(std::find(ids.begin(), ids.end(), e.law) != ids.end());
    }
  }
  const auto msg = error_of([] { io::parse_manifest(json{{"laws", json::array({json{{"law", "thm4_3"}, {"expect", "maybe"}}})}}); });
  CHECK(msg.find("maybe") != std::string::npos);
}
