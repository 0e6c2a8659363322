#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "amp1/cli_app.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  RunResult r;
  r.exit_code = amp1::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string corpus_file(const std::string& name) {
  return std::string(AMP1_CORPUS_DIR) + "/" + name;
}

nlohmann::json parse_json(const std::string& text) {
  return nlohmann::json::parse(text);
}

/// Writes a throwaway problem file and returns its path.
std::string temp_problem(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path.string();
}

}  // namespace

TEST_CASE("decide maps verdicts onto exit codes") {
  SECTION("Vanishes is 0") {
    const RunResult r =
        run({"decide", corpus_file("clean_full_rank.json"), "--format", "json"});
    CHECK(r.exit_code == 0);
    const auto doc = parse_json(r.out);
    CHECK(doc["result"]["verdict"] == "Vanishes");
    CHECK(doc["result"].contains("certificate"));
  }
  SECTION("NonVanishing is 1") {
    const RunResult r =
        run({"decide", corpus_file("notclean_baby.json"), "--format", "json"});
    CHECK(r.exit_code == 1);
    const auto doc = parse_json(r.out);
    CHECK(doc["result"]["verdict"] == "NonVanishing");
    CHECK(doc["result"]["witness"]["jet_order"] == "0");
  }
  SECTION("Unknown is 2") {
    // no zero points and a degree bound too small for any certificate
    const std::string path = temp_problem("amp1_cli_unknown.json", R"({
      "kind": "amp1", "vars": ["x1"], "fiber_rank": "1",
      "section": ["x1^2"], "degree_bound": "0"
    })");
    const RunResult r = run({"decide", path, "--format", "json"});
    CHECK(r.exit_code == 2);
    CHECK(parse_json(r.out)["result"]["verdict"] == "Unknown");
  }
}

TEST_CASE("usage problems exit with 64") {
  CHECK(run({}).exit_code == 64);
  CHECK(run({"frobnicate"}).exit_code == 64);
  CHECK(run({"decide"}).exit_code == 64);  // missing file argument
  CHECK(run({"decide", "x.json", "--route", "sideways"}).exit_code == 64);
  CHECK(run({"operators", "x.json", "--which", "d4"}).exit_code == 64);
  CHECK(run({"verify"}).exit_code == 64);  // neither file nor --corpus
  CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("data problems exit with 65") {
  CHECK(run({"decide", "/nonexistent/problem.json"}).exit_code == 65);
  const std::string bad = temp_problem("amp1_cli_bad.json", "{ not json");
  CHECK(run({"decide", bad}).exit_code == 65);
  const std::string off = temp_problem("amp1_cli_off_locus.json", R"({
    "kind": "amp1", "vars": ["x1"], "fiber_rank": "1",
    "section": ["x1"], "points": [["1"]]
  })");
  const RunResult r = run({"decide", off});
  CHECK(r.exit_code == 65);
  CHECK(r.err.find("zero point") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const char* cmd : {"decide", "cocycle", "operators", "clean"}) {
    const std::vector<std::string> args{cmd, corpus_file("notclean_baby.json"),
                                        "--format", "json"};
    const RunResult a = run(args);
    const RunResult b = run(args);
    INFO(cmd);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
  }
}

TEST_CASE("cocycle routes agree and --check-both enforces it") {
  const std::string file = corpus_file("notclean_baby.json");
  const RunResult closed =
      run({"cocycle", file, "--route", "closed", "--format", "json"});
  const RunResult def =
      run({"cocycle", file, "--route", "definitional", "--format", "json"});
  REQUIRE(closed.exit_code == 0);
  REQUIRE(def.exit_code == 0);
  const auto a = parse_json(closed.out);
  const auto b = parse_json(def.out);
  CHECK(a["route"] == "closed");
  CHECK(b["route"] == "definitional");
  CHECK(a["entries"] == b["entries"]);

  const RunResult both = run({"cocycle", file, "--check-both", "--format", "json"});
  CHECK(both.exit_code == 0);
  CHECK(parse_json(both.out)["route"] == "both");
  CHECK(parse_json(both.out)["entries"] == a["entries"]);
}

TEST_CASE("operators prints the requested matrices with labels") {
  const std::string file = corpus_file("notclean_baby.json");
  const RunResult all = run({"operators", file, "--format", "json"});
  REQUIRE(all.exit_code == 0);
  const auto doc = parse_json(all.out);
  REQUIRE(doc["matrices"].size() == 3);
  // n = 2, m = 2: six rows everywhere; 12 / 8 / 6 columns
  CHECK(doc["matrices"][0]["name"] == "d1");
  CHECK(doc["matrices"][0]["rows"] == "6");
  CHECK(doc["matrices"][0]["cols"] == "12");
  CHECK(doc["matrices"][1]["name"] == "d2");
  CHECK(doc["matrices"][1]["cols"] == "8");
  CHECK(doc["matrices"][2]["name"] == "d3");
  CHECK(doc["matrices"][2]["cols"] == "6");
  CHECK(doc["matrices"][0]["row_labels"][0] == "(k=1,i=1,j=1)");

  const RunResult only = run({"operators", file, "--which", "d2",
                              "--format", "json"});
  const auto doc2 = parse_json(only.out);
  REQUIRE(doc2["matrices"].size() == 1);
  CHECK(doc2["matrices"][0]["name"] == "d2");
}

TEST_CASE("clean echoes the oracle verdicts") {
  CHECK(run({"clean", corpus_file("clean_line_locus.json")}).exit_code == 0);
  CHECK(run({"clean", corpus_file("notclean_cross.json")}).exit_code == 1);
  CHECK(run({"clean", corpus_file("derived_parabola_tangent.json")}).exit_code == 1);
  // an amp1 file without a zero_locus block has nothing to check
  const std::string bare = temp_problem("amp1_cli_bare.json", R"({
    "kind": "amp1", "vars": ["x1"], "fiber_rank": "1", "section": ["x1"]
  })");
  const RunResult r = run({"clean", bare, "--format", "json"});
  CHECK(r.exit_code == 2);
  CHECK(parse_json(r.out)["result"]["verdict"] == "Unknown");
}

TEST_CASE("verify runs the whole check suite on one file") {
  const RunResult r =
      run({"verify", corpus_file("clean_zero_section.json"), "--format", "json"});
  REQUIRE(r.exit_code == 0);
  const auto doc = parse_json(r.out);
  CHECK(doc["all_passed"] == "true");
  bool saw_routes = false, saw_q2 = false;
  for (const auto& check : doc["checks"]) {
    if (check["name"] == "route-equality") saw_routes = true;
    if (check["name"] == "q-squared") saw_q2 = true;
    CHECK(check["status"] != "fail");
  }
  CHECK(saw_routes);
  CHECK(saw_q2);
}

TEST_CASE("verify --corpus rejects directories without problems") {
  const auto empty = std::filesystem::temp_directory_path() / "amp1_cli_empty";
  std::filesystem::create_directories(empty);
  const RunResult r = run({"verify", "--corpus", empty.string()});
  CHECK(r.exit_code == 65);
}

TEST_CASE("text format renders an indented report") {
  const RunResult r = run({"decide", corpus_file("notclean_baby.json")});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("verdict: NonVanishing") != std::string::npos);
  CHECK(r.out.find("engine_version: 1.0.0") != std::string::npos);
}
