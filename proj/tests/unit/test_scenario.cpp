#include <gtest/gtest.h>

#include <cmath>

#include "varberg/scenario.hpp"

using namespace varberg;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text, "t.json");
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Scenario, MinimalDefaults) {
  Scenario sc = parse_scenario("{}", "t.json");
  EXPECT_EQ(sc.name, "scenario");
  EXPECT_EQ(sc.n, 1);
  EXPECT_EQ(sc.seed, 1u);
  EXPECT_EQ(sc.p.eval(Point{0.5}), 2.0);
  EXPECT_EQ(sc.lattice_r, 1.0);
  EXPECT_EQ(sc.lattice_rho_max, 1.0 - 1e-4);
  EXPECT_TRUE(sc.tasks.empty());
}

TEST(Scenario, SeedOverride) {
  EXPECT_EQ(parse_scenario(R"({"seed": 5})", "t").seed, 5u);
  EXPECT_EQ(parse_scenario(R"({"seed": 5})", "t", 77).seed, 77u);
  EXPECT_TRUE(contains(error_of(R"({"seed": -1})"), "seed"));
}

TEST(Scenario, FunctionExpressions) {
  Scenario sc = parse_scenario(R"({
    "dimension": 2,
    "functions": {
      "c": [1, 2],
      "m": {"type": "monomial", "alpha": [2, 1], "coef": [0, 1]},
      "x": {"type": "coord", "index": 1},
      "xb": {"type": "conj_coord", "index": 0},
      "s": {"type": "sum", "terms": ["m", "x", 3]},
      "p": {"type": "product", "factors": ["x", "x"]},
      "d": {"type": "difference", "left": "p", "right": "x"},
      "k": {"type": "kernel_power", "a": [0.5, 0], "N": 3},
      "b": {"type": "boundary_factor", "beta": 2},
      "a": {"type": "abs_power", "of": "x", "q": 2},
      "sc": {"type": "scale", "by": [0, 2], "of": "x"},
      "t": {"type": "test_function", "a": [0.5, 0], "N": 3, "family": "f"}
    }
  })", "t");
  Point z{cplx(0.3, 0.1), cplx(-0.2, 0.4)};
  cplx z0 = z[0], z1 = z[1];
  auto f = [&](const char* name) { return sc.functions.at(name)(z); };
  EXPECT_EQ(f("c"), cplx(1, 2));
  EXPECT_NEAR(std::abs(f("m") - cplx(0, 1) * z0 * z0 * z1), 0.0, 1e-15);
  EXPECT_EQ(f("x"), z1);
  EXPECT_EQ(f("xb"), std::conj(z0));
  EXPECT_NEAR(std::abs(f("s") - (cplx(0, 1) * z0 * z0 * z1 + z1 + 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f("d") - (z1 * z1 - z1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f("k") - std::pow(1.0 - 0.5 * z0, -3.0)), 0.0, 1e-13);
  EXPECT_NEAR(f("b").real(), std::pow(1.0 - z.norm2(), 2.0), 1e-15);
  EXPECT_NEAR(f("a").real(), std::norm(z1), 1e-15);
  EXPECT_EQ(f("sc"), cplx(0, 2) * z1);
  EXPECT_FALSE(sc.functions.at("xb").holomorphic());
  EXPECT_TRUE(sc.functions.at("t").holomorphic());
}

TEST(Scenario, MapsAndExponents) {
  Scenario sc = parse_scenario(R"({
    "exponent": {"type": "sum", "terms": [4, {"type": "re_linear", "b": [1]}]},
    "functions": {"z": {"type": "coord", "index": 0}},
    "maps": {
      "id": {"type": "identity"},
      "half": {"type": "scalar", "c": 0.5},
      "sq": {"components": [{"type": "product", "factors": ["z", "z"]}]},
      "alias": "sq",
      "c": {"components": [{"type": "compose", "of": "z", "map": "half"}]}
    }
  })", "t");
  EXPECT_EQ(sc.p.p_minus(), 3.0);
  EXPECT_EQ(sc.p.p_plus(), 5.0);
  Point z{cplx(0.5, 0.5)};
  EXPECT_TRUE(sc.maps.at("id").is_identity());
  EXPECT_EQ(sc.maps.at("half").apply(z)[0], 0.5 * z[0]);
  EXPECT_NEAR(std::abs(sc.maps.at("alias").apply(z)[0] - z[0] * z[0]), 0.0, 1e-15);
  EXPECT_EQ(sc.maps.at("c").apply(z)[0], 0.5 * z[0]);

  Json conj = Json::parse(R"({"type": "conjugate", "of": 3})");
  EXPECT_NEAR(parse_exponent(Field(conj, "e"), 1).eval(Point{0.2}), 1.5, 1e-15);
  Json ex = Json::parse(R"({"type": "example"})");
  EXPECT_EQ(parse_exponent(Field(ex, "e"), 2).eval(Point::origin(2)), 5.0);
  Json step = Json::parse(R"({"type": "sum", "terms": [2, {"type": "radial_step", "t": 0.5, "coef": 1}]})");
  EXPECT_EQ(parse_exponent(Field(step, "e"), 1).eval(Point{0.7}), 3.0);
}

TEST(ScenarioErrors, SyntaxErrorsCarryLineAndColumn) {
  std::string e = error_of("{\n  \"name\": \"x\",\n  oops\n}");
  EXPECT_TRUE(contains(e, "t.json:3:")) << e;
  EXPECT_TRUE(contains(e, "syntax error")) << e;
}

TEST(ScenarioErrors, UnknownFieldsAndKinds) {
  EXPECT_TRUE(contains(error_of(R"({"nmae": "x"})"), "unknown field 'nmae'"));
  EXPECT_TRUE(contains(error_of(R"({"tasks": [{"kind": "bogus"}]})"), "tasks[0].kind: unknown task kind 'bogus'"));
  EXPECT_TRUE(contains(error_of(R"({"functions": {"f": {"type": "wavelet"}}})"), "unknown function type 'wavelet'"));
  EXPECT_TRUE(contains(error_of(R"({"exponent": {"type": "cubic"}})"), "unknown exponent type 'cubic'"));
  EXPECT_TRUE(contains(error_of(R"({"name": "a/b"})"), "plain file stem"));
  EXPECT_TRUE(contains(error_of(R"({"dimension": 9})"), "dimension"));
  EXPECT_TRUE(contains(error_of("[1, 2]"), "top level must be an object"));
}

TEST(ScenarioErrors, UnresolvedReferencesAreNamed) {
  std::string e = error_of(R"({"functions": {"f": {"type": "sum", "terms": ["g"]}}})");
  EXPECT_TRUE(contains(e, "unresolved reference: function 'g'")) << e;
  EXPECT_TRUE(contains(e, "functions.f")) << e;
  EXPECT_TRUE(contains(error_of(R"({"maps": {"m": "nowhere"}})"), "unresolved reference: map 'nowhere'"));
}

TEST(ScenarioErrors, InvalidMathematicalObjects) {
  EXPECT_TRUE(contains(error_of(R"({"exponent": 1})"), "exponent"));
  EXPECT_TRUE(contains(error_of(R"({"maps": {"m": {"type": "scalar", "c": 2}}})"), "maps.m"));
  std::string e = error_of(R"({"functions": {"z": {"type": "coord", "index": 0}},
                              "maps": {"m": {"components": [{"type": "scale", "by": 1.5, "of": "z"}]}}})");
  EXPECT_TRUE(contains(e, "leaves the ball")) << e;
  EXPECT_TRUE(contains(error_of(R"({"functions": {"c": [1, 2, 3]}})"), "complex number"));
  EXPECT_TRUE(contains(error_of(R"({"functions": {"m": {"type": "monomial", "alpha": [1, 2]}}})"), "multi-index"));
}

TEST(Measures, BuildAndCache) {
  Scenario sc = parse_scenario(R"({
    "functions": {"z": {"type": "coord", "index": 0}, "one": 1},
    "maps": {"half": {"type": "scalar", "c": 0.5}},
    "measures": {
      "dV": {"type": "lebesgue", "radial": 40, "angular": 32},
      "w": {"type": "density", "base": "dV", "boundary_power": 1},
      "m": {"type": "density", "base": "dV", "modulus_of": "z", "modulus_power": 2},
      "pm": {"type": "point_masses", "masses": [{"at": [0.5], "mass": 2}, {"at": [[0, 0.25]], "mass": 1}]},
      "pb": {"type": "pullback", "base": "dV", "variant": "plain", "u": "one", "phi": "half"},
      "zero": {"type": "empty"},
      "loop": {"type": "density", "base": "loop"},
      "bad": {"type": "density", "base": "missing"},
      "neg": {"type": "lebesgue", "radial": -3}
    }
  })", "t");
  MeasureTable table(sc, {});
  const QuadMeasure& dv = table.get("dV", "here");
  EXPECT_EQ(&dv, &table.get("dV", "again"));
  EXPECT_NEAR(table.get("w", "x").total_mass(), 0.5, 1e-13);
  EXPECT_NEAR(table.get("m", "x").total_mass(), 0.5, 1e-13);
  EXPECT_EQ(table.get("pm", "x").total_mass(), 3.0);
  EXPECT_NEAR(table.get("pb", "x").total_mass(), 1.0, 1e-13);
  EXPECT_EQ(table.get("zero", "x").size(), 0u);
  EXPECT_THROW(table.get("loop", "x"), ScenarioError);
  try {
    table.get("bad", "tasks[3]");
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_TRUE(contains(e.what(), "unresolved reference: measure 'missing'")) << e.what();
  }
  EXPECT_THROW(table.get("neg", "x"), ScenarioError);
  EXPECT_THROW(table.get("nothing", "x"), ScenarioError);
  ASSERT_TRUE(table.lebesgue_spec("dV", "x").has_value());
  EXPECT_FALSE(table.lebesgue_spec("w", "x").has_value());
}

TEST(Measures, ResolutionOverride) {
  Scenario sc = parse_scenario(R"({"measures": {"dV": {"type": "lebesgue", "radial": 400, "angular": 512}}})", "t");
  MeasureTable table(sc, MeasureOverrides{40, 16});
  EXPECT_EQ(table.get("dV", "x").size(), 40u * 16u);
}

TEST(Scenario, TaskNamesDefaultToKindAndIndex) {
  Scenario sc = parse_scenario(R"({"tasks": [{"kind": "check", "check": "jensen"}, {"kind": "norm", "name": "n"}]})", "t");
  ASSERT_EQ(sc.tasks.size(), 2u);
  EXPECT_EQ(sc.tasks[0].name, "check-0");
  EXPECT_EQ(sc.tasks[1].name, "n");
  EXPECT_EQ(sc.tasks[1].path, "tasks[1]");
  EXPECT_EQ(task_kinds().size(), 7u);
}

TEST(Scenario, ShippedScenariosParse) {
  for (const auto& entry : std::filesystem::directory_iterator(VARBERG_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_scenario(entry.path().string())) << entry.path();
  }
}
