#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "amp1/problem_io.hpp"

using amp1::LoadedProblem;
using amp1::Poly;
using amp1::Rational;

namespace {

LoadedProblem parse(const std::string& text) {
  return amp1::parse_problem_text(text, "test");
}

const char* kMinimal = R"({
  "kind": "amp1",
  "vars": ["x1", "x2"],
  "fiber_rank": "2",
  "section": ["x1", "x1^2 + x1*x2 + x2^2"],
  "points": [["0", "0"]]
})";

}  // namespace

TEST_CASE("minimal amp1 file parses with defaults") {
  const LoadedProblem lp = parse(kMinimal);
  CHECK(lp.kind == "amp1");
  CHECK(lp.problem.vars == std::vector<std::string>{"x1", "x2"});
  CHECK(lp.problem.m == 2);
  CHECK(lp.problem.section.component(0) == Poly::variable(lp.problem.vars, 0));
  REQUIRE(lp.problem.zero_points.size() == 1);
  CHECK(lp.problem.zero_points[0] ==
        std::vector<Rational>{Rational(0), Rational(0)});
  // defaults: degree bound 2*deg(s) + 2, jet order 4
  CHECK(lp.problem.degree_bound == 6);
  CHECK(lp.problem.jet_order == 4);
  CHECK_FALSE(lp.problem.explicit_connection);
  CHECK_FALSE(lp.witness.has_value());
  CHECK_FALSE(lp.derived.has_value());
}

TEST_CASE("explicit bounds override the defaults") {
  const LoadedProblem lp = parse(R"({
    "kind": "amp1",
    "vars": ["x1"],
    "fiber_rank": "1",
    "section": ["x1^3"],
    "degree_bound": "9",
    "jet_order": "2"
  })");
  CHECK(lp.problem.degree_bound == 9);
  CHECK(lp.problem.jet_order == 2);
}

TEST_CASE("connection block fills sparse components over a trivial base") {
  const LoadedProblem lp = parse(R"({
    "kind": "amp1",
    "vars": ["x1", "x2"],
    "fiber_rank": "1",
    "section": ["x1"],
    "connection": {
      "gamma_m": { "1,2,1": "x2", "2,1,1": "x2" },
      "gamma_e": { "1,1,1": "3/2" },
      "beta": {}
    }
  })");
  REQUIRE(lp.problem.explicit_connection);
  const auto& conn = lp.problem.connection;
  const auto vars = lp.problem.vars;
  CHECK(conn.gamma_m()[0][1][0] == Poly::variable(vars, 1));
  CHECK(conn.gamma_m()[1][0][0] == Poly::variable(vars, 1));
  CHECK(conn.gamma_m()[0][0][0].is_zero());
  CHECK(conn.gamma_e()[0][0][0] == Poly::constant(vars, Rational(3, 2)));
  CHECK(conn.gamma_e()[1][0][0].is_zero());
  CHECK(amp1::validate(conn).empty());
}

TEST_CASE("zero_locus block becomes a witness with the top-level points") {
  const LoadedProblem lp = parse(R"({
    "kind": "amp1",
    "vars": ["x1", "x2"],
    "fiber_rank": "2",
    "section": ["x1", "0"],
    "points": [["0", "5"]],
    "zero_locus": {
      "declared_singular": false,
      "charts": [
        { "base_point": ["0", "5"],
          "param_vars": ["w"],
          "param_map": ["0", "w"],
          "param_point": ["5"],
          "claimed_dim": "1" }
      ]
    }
  })");
  REQUIRE(lp.witness.has_value());
  CHECK(lp.witness->points == lp.problem.zero_points);
  REQUIRE(lp.witness->charts.size() == 1);
  CHECK(lp.witness->charts[0].claimed_dim == 1);
  CHECK(lp.witness->charts[0].param_vars == std::vector<std::string>{"w"});
  CHECK_FALSE(lp.witness->declared_singular);
}

TEST_CASE("empty zero_locus with no points means a declared-empty locus") {
  const LoadedProblem lp = parse(R"({
    "kind": "amp1",
    "vars": ["x1"],
    "fiber_rank": "1",
    "section": ["x1^2 + 1"],
    "zero_locus": { "charts": [] }
  })");
  REQUIRE(lp.witness.has_value());
  CHECK(lp.witness->points.empty());
  CHECK(lp.witness->charts.empty());
}

TEST_CASE("derived file parses into both views") {
  const LoadedProblem lp = parse(R"({
    "kind": "derived",
    "ambient_dim": "2",
    "X": { "param_vars": ["t"], "map": ["t", "t^2"] },
    "Y": { "param_vars": ["u"], "map": ["u", "0"] },
    "intersections": [
      { "x_params": ["0"], "y_params": ["0"], "claimed_dim": "0" }
    ]
  })");
  CHECK(lp.kind == "derived");
  REQUIRE(lp.derived.has_value());
  CHECK(lp.derived->x.param_vars == std::vector<std::string>{"t"});
  CHECK(lp.derived->y.param_vars == std::vector<std::string>{"u"});
  REQUIRE(lp.derived->intersections.size() == 1);
  CHECK(lp.derived->intersections[0].claimed_dim == 0);
  // the flat-chart problem is already built
  CHECK(lp.problem.vars == std::vector<std::string>{"t", "u"});
  CHECK(lp.problem.m == 2);
  REQUIRE(lp.problem.zero_points.size() == 1);
}

TEST_CASE("malformed documents are rejected with located diagnostics") {
  SECTION("not JSON at all") {
    CHECK_THROWS_AS(parse("not json"), amp1::error);
  }
  SECTION("root is not an object") {
    CHECK_THROWS_AS(parse("[1, 2]"), amp1::error);
  }
  SECTION("missing kind") {
    CHECK_THROWS_AS(parse(R"({"vars": ["x1"]})"), amp1::error);
  }
  SECTION("unsupported kind") {
    CHECK_THROWS_WITH(parse(R"({"kind": "weird"})"),
                      Catch::Matchers::ContainsSubstring("amp1"));
  }
  SECTION("unknown key at the root") {
    CHECK_THROWS_WITH(
        parse(R"({
          "kind": "amp1", "vars": ["x1"], "fiber_rank": "1",
          "section": ["x1"], "extra": "1"
        })"),
        Catch::Matchers::ContainsSubstring("extra"));
  }
  SECTION("unknown key inside a submanifold") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "derived", "ambient_dim": "1",
      "X": { "param_vars": ["t"], "map": ["t"], "color": "red" },
      "Y": { "param_vars": ["u"], "map": ["u"] },
      "intersections": []
    })"),
                    amp1::error);
  }
}

TEST_CASE("numbers must be written as strings") {
  SECTION("bare integer fiber_rank") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": 1, "section": ["x1"]
    })"),
                    amp1::error);
  }
  SECTION("bare number inside a point") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1",
      "section": ["x1"], "points": [[0]]
    })"),
                    amp1::error);
  }
  SECTION("decimal notation is not an exact rational") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1",
      "section": ["x1"], "points": [["0.5"]]
    })"),
                    amp1::error);
  }
}

TEST_CASE("structural validation is enforced at parse time") {
  SECTION("section arity must match fiber_rank") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "2", "section": ["x1"]
    })"),
                    amp1::error);
  }
  SECTION("duplicate variables") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1", "x1"], "fiber_rank": "1", "section": ["x1"]
    })"),
                    amp1::error);
  }
  SECTION("invalid identifier") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["1x"], "fiber_rank": "1", "section": ["1x"]
    })"),
                    amp1::error);
  }
  SECTION("declared zero point off the locus") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1",
      "section": ["x1"], "points": [["1"]]
    })"),
                    amp1::error);
  }
  SECTION("negative degree bound") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1",
      "section": ["x1"], "degree_bound": "-1"
    })"),
                    amp1::error);
  }
  SECTION("connection index tuple with wrong arity") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1", "section": ["x1"],
      "connection": { "gamma_m": { "1,1": "1" } }
    })"),
                    amp1::error);
  }
  SECTION("connection index out of range") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1", "section": ["x1"],
      "connection": { "gamma_e": { "1,2,1": "1" } }
    })"),
                    amp1::error);
  }
  SECTION("expression using an undeclared variable") {
    CHECK_THROWS_AS(parse(R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1", "section": ["x2"]
    })"),
                    amp1::error);
  }
}

TEST_CASE("every corpus file loads with a plausible shape") {
  namespace fs = std::filesystem;
  size_t amp1_count = 0, derived_count = 0;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(AMP1_CORPUS_DIR))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  REQUIRE(files.size() >= 19);
  for (const fs::path& f : files) {
    INFO(f.string());
    const LoadedProblem lp = amp1::load_problem_file(f.string());
    if (lp.kind == "amp1") {
      ++amp1_count;
      CHECK(lp.problem.m >= 1);
    } else {
      REQUIRE(lp.kind == "derived");
      ++derived_count;
      REQUIRE(lp.derived.has_value());
    }
    CHECK(lp.problem.degree_bound >= 0);
    CHECK(lp.problem.jet_order >= 0);
  }
  CHECK(amp1_count >= 13);
  CHECK(derived_count >= 6);
}

TEST_CASE("load_problem_file reports unreadable paths") {
  CHECK_THROWS_WITH(amp1::load_problem_file("/nonexistent/nope.json"),
                    Catch::Matchers::ContainsSubstring("cannot open"));
}
